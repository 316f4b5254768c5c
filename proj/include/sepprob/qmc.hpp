#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sepprob/bloore.hpp"
#include "sepprob/desf.hpp"
#include "sepprob/quadrature.hpp"

namespace sepprob {

// Binary-indicator Monte Carlo result. std_error = sqrt(p(1-p)/n) (conservative
// under QMC); the confidence interval is four standard errors each side.
struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  static Estimate from_counts(std::int64_t passed, std::int64_t total);
};

struct DesfCell {
  double xi = 0.0;
  double s_hat = 0.0;
  double std_error = 0.0;
  std::int64_t n_accepted = 0;
  bool flagged = false;  // fewer than 100 accepted samples
};

struct DesfTable {
  std::vector<DesfCell> cells;
};

struct XiGrid {
  double lo = -4.0;
  double hi = 4.0;
  int points = 81;
  double step() const { return (hi - lo) / (points - 1); }
  double at(int i) const { return lo + step() * i; }
};

struct SepTestSpec {
  enum class Kind { kFullPeres, kMinors2x2All, kMinor3x3Single, kMinors3x3Pair };
  Kind kind = Kind::kFullPeres;
  int k = 0;          // single-minor index
  int a = 0, b = 0;   // pair indices
  std::string name() const;
  // "full-ph" | "2x2" | "3x3:k" | "pair:a,b"
  static SepTestSpec parse(const std::string& s);
};

// Relaxed/full separability test in z coordinates at e^{xi} = mu.
// Precondition for kFullPeres: the correlation matrix of z is PSD.
bool run_sep_test(const SepTestSpec& test, const ZVec& z, double mu);

struct QmcOptions {
  std::uint64_t seed = 12345;
  int threads = 0;                     // 0 = hardware concurrency
  std::int64_t block_size = 1 << 16;   // sharding granularity; results do not depend on threads
};

struct SepProbResult {
  Estimate estimate;
  DesfTable binned;          // conditional pass fraction per xi bin
  std::int64_t n_requested = 0;
  std::int64_t n_valid = 0;  // samples that were valid density matrices
  double acceptance_rate = 0.0;
};

// Diagonal 4-vector with density prod rho_ii^{3 beta/2} on the simplex,
// i.e. symmetric Dirichlet(3 beta/2 + 1), as a deterministic transform of
// three uniforms (inverse-CDF Beta chain).
Diag4 sample_diag(BetaParameter beta, const std::array<double, 3>& u);
Diag4 sample_diag_dirichlet(const std::array<double, 4>& alpha, const std::array<double, 3>& u);

// Empirical DESF: draw z in [-1,1]^6, keep the PSD ones (the region is
// xi-independent), report the conditional pass fraction at every grid xi.
DesfTable estimate_desf(const SepTestSpec& test, const XiGrid& grid, std::int64_t n,
                        const QmcOptions& opts = {});

// Joint (diag, z) sampling; beta = 1 (real) supports every test, beta = 2
// (complex off-diagonals) supports kFullPeres only.
SepProbResult estimate_sep_prob(const SepTestSpec& test, BetaParameter beta, std::int64_t n,
                                const QmcOptions& opts = {}, const XiGrid& grid = {});

struct AbsoluteResult {
  Estimate estimate;
  std::int64_t n_valid = 0;
  std::int64_t implication_violations = 0;  // absolutely separable but PT test fails
};
AbsoluteResult estimate_absolute(std::int64_t n, const QmcOptions& opts = {});

// Nine-dimensional complex-pair family: (1,4), (2,3) and (1,2) complex, the
// rest zero; diagonal ~ Dirichlet(3,3,2,2).
SepProbResult estimate_scenario(std::int64_t n, const QmcOptions& opts = {},
                                const XiGrid& grid = {});

// Trapezoid of S_hat * J over the table grid; the returned std_error treats
// cells as fully correlated (they share samples), which is conservative.
struct TableProbability {
  double value = 0.0;
  double std_error = 0.0;
};
TableProbability desf_table_probability(const DesfTable& table, const JacobianCurve& jac = {});

}  // namespace sepprob
