#pragma once

#include <string>
#include <vector>

namespace sepprob {

// Which 3x3 PT minors are jointly enforced and how the cube integrations
// compose. Any two minors share exactly one z variable; each minor also owns
// one private variable that no other enforced minor touches.
struct CubeSchemeSpec {
  std::vector<int> minors;  // subset of {1,2,3,4}
  static int shared_variable(int a, int b);  // ZIndex of the shared z
  std::string describe() const;

  static CubeSchemeSpec single(int k);
  static CubeSchemeSpec paired(int a, int b);
  static CubeSchemeSpec triple();  // fixed to {2,3,4}
};

// Weighted cube integral of a single 3x3 minor's indicator over its three
// variables: (3/4)^3 prod(1-z^2) 1[minor_k >= 0]. Equals the s3x3 curve for
// k in {1,4} and its reflection for k in {2,3}. drop_indicator integrates the
// bare weight (exactly 1, weight calibration).
double cube_single(int k, double xi, bool drop_indicator = false);

// Paired scheme: both minors reduced independently to the shared variable by
// weighted 2-D integration, then coupled through one final weighted 1-D
// integration.
double cube_paired(int a, int b, double xi, bool drop_indicator = false);

// Triple scheme for minors {2,3,4}: each minor's private variable integrates
// out in closed form given the three pairwise-shared variables (z12, z13,
// z23); the three reduced factors multiply under one weighted 3-D integral.
double cube_triple(double xi, bool drop_indicator = false);

}  // namespace sepprob
