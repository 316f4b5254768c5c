#pragma once

#include <array>
#include <cstddef>

#include "sepprob/symmat.hpp"

namespace sepprob {

// Off-diagonal index order used everywhere: (1,2),(1,3),(1,4),(2,3),(2,4),(3,4).
enum ZIndex : int { kZ12 = 0, kZ13 = 1, kZ14 = 2, kZ23 = 3, kZ24 = 4, kZ34 = 5 };

inline constexpr std::array<std::array<int, 2>, 6> kZPairs = {
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

inline constexpr double kPsdTol = 1e-12;
inline constexpr double kSimplexTol = 1e-12;

using Diag4 = std::array<double, 4>;
using ZVec = std::array<double, 6>;

// Cross-ratio variable xi = (1/2) log(d1 d4 / (d2 d3)) with its companions
// nu = e^{2 xi} and mu = e^{xi}.
struct XiValue {
  double xi;
  double nu;
  double mu;
  static XiValue from_xi(double x);
};

// A two-qubit state in correlation coordinates: diagonal simplex point plus
// the six z_ij = rho_ij / sqrt(rho_ii rho_jj). The state is a valid density
// matrix iff the unit-diagonal correlation matrix Z is positive semidefinite.
struct BlooreState {
  Diag4 diag;
  ZVec z;
};

struct DensityMatrix4 {
  Mat4 m;
  double operator()(int i, int j) const { return m[i * 4 + j]; }
  double trace() const { return m[0] + m[5] + m[10] + m[15]; }
  std::array<double, 4> eigenvalues() const { return jacobi_eigenvalues<4>(m); }
};

// rho_ii = diag_i, rho_ij = z_ij sqrt(diag_i diag_j). Does not require PSD.
DensityMatrix4 rho_from_bloore(const Diag4& diag, const ZVec& z);

// Requires strictly positive diagonal entries.
XiValue xi_of(const Diag4& diag);

Mat4 correlation_matrix(const ZVec& z);

// Z positive semidefinite (min eigenvalue >= -kPsdTol)?
bool correlation_psd(const ZVec& z);

// Partial transposition in z coordinates: z14' = e^{-xi} z23, z23' = e^{xi} z14,
// everything else unchanged. rho^PT is PSD iff the correlation matrix of z' is.
ZVec pt_correlation(const ZVec& z, const XiValue& xi);

// Principal minor of the PT correlation matrix Z'. order 2: index 1..6 in the
// pair order above. order 3: index k in 1..4 deletes row/column k. order 4
// ignores index and returns det(Z').
double pt_principal_minor(const ZVec& z, const XiValue& xi, int order, int index);

// Peres-Horodecki test: rho^PT PSD. Checked by the min eigenvalue of Z'; the
// determinant route (valid because a two-qubit PT has at most one negative
// eigenvalue) is exposed separately and must agree away from the boundary.
bool peres_separable(const BlooreState& state);
bool peres_separable_det(const ZVec& z, const XiValue& xi);

// lambda1 - lambda3 - 2 sqrt(lambda2 lambda4) <= tol, eigenvalues descending.
bool absolutely_separable(const BlooreState& state);

}  // namespace sepprob
