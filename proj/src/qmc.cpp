#include "sepprob/qmc.hpp"

#include <atomic>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <thread>

#include <boost/math/special_functions/beta.hpp>

#include "sepprob/sobol.hpp"
#include "sepprob/symmat.hpp"

namespace sepprob {

namespace {

double clamp_unit(double u) { return std::min(std::max(u, 1e-15), 1.0 - 1e-15); }

// --- deterministic block-parallel driver -------------------------------------
// Workers pull block indices from an atomic counter; each block's accumulator is
// stored at its own slot and reduced in block order afterwards, so the result
// is bit-identical for any thread count.
template <class Acc, class Work>
std::vector<Acc> parallel_blocks(std::int64_t n, const QmcOptions& opts, Work work) {
  const std::int64_t bs = std::max<std::int64_t>(opts.block_size, 1);
  const std::int64_t nblocks = (n + bs - 1) / bs;
  std::vector<Acc> accs(static_cast<std::size_t>(nblocks));
  int nthreads = opts.threads > 0 ? opts.threads
                                  : static_cast<int>(std::thread::hardware_concurrency());
  if (nthreads < 1) nthreads = 1;
  std::atomic<std::int64_t> next{0};
  auto runner = [&] {
    for (;;) {
      const std::int64_t b = next.fetch_add(1);
      if (b >= nblocks) return;
      const std::int64_t lo = b * bs;
      const std::int64_t hi = std::min(lo + bs, n);
      work(b, lo, hi, accs[static_cast<std::size_t>(b)]);
    }
  };
  if (nthreads == 1) {
    runner();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(nthreads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(runner);
    for (auto& th : pool) th.join();
  }
  return accs;
}

// --- fast minor forms ---------------------------------------------------------
// minor_k = 1 + 2 E a b c - a^2 - b^2 - E^2 c^2, c the weighted variable.
double minor3_fast(int k, const ZVec& z, double mu) {
  switch (k) {
    case 1: return 1.0 + 2.0 * mu * z[kZ14] * z[kZ24] * z[kZ34] - z[kZ24] * z[kZ24] -
                   z[kZ34] * z[kZ34] - mu * mu * z[kZ14] * z[kZ14];
    case 2: {
      const double e = 1.0 / mu;
      return 1.0 + 2.0 * e * z[kZ13] * z[kZ23] * z[kZ34] - z[kZ13] * z[kZ13] -
             z[kZ34] * z[kZ34] - e * e * z[kZ23] * z[kZ23];
    }
    case 3: {
      const double e = 1.0 / mu;
      return 1.0 + 2.0 * e * z[kZ12] * z[kZ23] * z[kZ24] - z[kZ12] * z[kZ12] -
             z[kZ24] * z[kZ24] - e * e * z[kZ23] * z[kZ23];
    }
    case 4: return 1.0 + 2.0 * mu * z[kZ12] * z[kZ13] * z[kZ14] - z[kZ12] * z[kZ12] -
                   z[kZ13] * z[kZ13] - mu * mu * z[kZ14] * z[kZ14];
    default: throw std::invalid_argument("minor3_fast: bad index");
  }
}

Mat4 pt_matrix(const ZVec& z, double mu) {
  ZVec zp = z;
  zp[kZ14] = z[kZ23] / mu;
  zp[kZ23] = z[kZ14] * mu;
  return correlation_matrix(zp);
}

// --- complex helpers (beta = 2 and the scenario family) -----------------------
using Cplx = std::complex<double>;
using HermMat4 = std::array<Cplx, 16>;

HermMat4 hermitian_from_z(const std::array<Cplx, 6>& z) {
  HermMat4 h{};
  for (int i = 0; i < 4; ++i) h[i * 4 + i] = 1.0;
  for (int k = 0; k < 6; ++k) {
    const int i = kZPairs[k][0], j = kZPairs[k][1];
    h[i * 4 + j] = z[k];
    h[j * 4 + i] = std::conj(z[k]);
  }
  return h;
}

// [[X, -Y], [Y, X]] is symmetric with H's eigenvalues doubled.
Mat8 embed_hermitian(const HermMat4& h) {
  Mat8 m{};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const double x = h[i * 4 + j].real(), y = h[i * 4 + j].imag();
      m[i * 8 + j] = x;
      m[(i + 4) * 8 + (j + 4)] = x;
      m[i * 8 + (j + 4)] = -y;
      m[(i + 4) * 8 + j] = y;
    }
  return m;
}

bool hermitian_psd(const std::array<Cplx, 6>& z) {
  return min_eigenvalue<8>(embed_hermitian(hermitian_from_z(z))) >= -kPsdTol;
}

// PT in complex z coordinates: (1,2) and (3,4) conjugate, (1,4)/(2,3) swap
// with the e^{-+xi} renormalization.
std::array<Cplx, 6> pt_complex(const std::array<Cplx, 6>& z, double mu) {
  std::array<Cplx, 6> zp = z;
  zp[kZ12] = std::conj(z[kZ12]);
  zp[kZ34] = std::conj(z[kZ34]);
  zp[kZ14] = z[kZ23] / mu;
  zp[kZ23] = z[kZ14] * mu;
  return zp;
}

Cplx disk_point(double u, double v) {
  const double r = std::sqrt(u);
  const double th = 2.0 * 3.14159265358979323846 * v;
  return {r * std::cos(th), r * std::sin(th)};
}

int bin_index(const XiGrid& grid, double xi) {
  const double h = grid.step();
  const int idx = static_cast<int>(std::floor((xi - grid.lo) / h + 0.5));
  if (idx < 0 || idx >= grid.points) return -1;
  return idx;
}

struct BinAcc {
  std::int64_t total = 0;
  std::int64_t valid = 0;
  std::int64_t passed = 0;
  std::vector<std::int64_t> bin_valid;
  std::vector<std::int64_t> bin_passed;
};

DesfTable bins_to_table(const XiGrid& grid, const std::vector<std::int64_t>& valid,
                        const std::vector<std::int64_t>& passed) {
  DesfTable t;
  t.cells.resize(grid.points);
  for (int g = 0; g < grid.points; ++g) {
    DesfCell& c = t.cells[g];
    c.xi = grid.at(g);
    c.n_accepted = valid[g];
    c.flagged = valid[g] < 100;
    if (valid[g] > 0) {
      c.s_hat = static_cast<double>(passed[g]) / static_cast<double>(valid[g]);
      c.std_error = std::sqrt(c.s_hat * (1.0 - c.s_hat) / static_cast<double>(valid[g]));
    }
  }
  return t;
}

}  // namespace

Estimate Estimate::from_counts(std::int64_t passed, std::int64_t total) {
  Estimate e;
  e.n_samples = total;
  if (total <= 0) return e;
  e.mean = static_cast<double>(passed) / static_cast<double>(total);
  e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(total));
  e.ci_low = e.mean - 4.0 * e.std_error;
  e.ci_high = e.mean + 4.0 * e.std_error;
  return e;
}

std::string SepTestSpec::name() const {
  switch (kind) {
    case Kind::kFullPeres: return "full-ph";
    case Kind::kMinors2x2All: return "2x2";
    case Kind::kMinor3x3Single: return "3x3:" + std::to_string(k);
    case Kind::kMinors3x3Pair: return "pair:" + std::to_string(a) + "," + std::to_string(b);
  }
  return "?";
}

SepTestSpec SepTestSpec::parse(const std::string& s) {
  SepTestSpec t;
  if (s == "full-ph" || s == "full_ph" || s == "full") {
    t.kind = Kind::kFullPeres;
    return t;
  }
  if (s == "2x2" || s == "minors2x2" || s == "minors2x2_all") {
    t.kind = Kind::kMinors2x2All;
    return t;
  }
  if (s.rfind("3x3:", 0) == 0) {
    t.kind = Kind::kMinor3x3Single;
    t.k = std::stoi(s.substr(4));
    if (t.k < 1 || t.k > 4) throw std::invalid_argument("SepTestSpec: 3x3 index must be 1..4");
    return t;
  }
  if (s.rfind("pair:", 0) == 0) {
    const auto comma = s.find(',', 5);
    if (comma == std::string::npos) throw std::invalid_argument("SepTestSpec: pair:a,b expected");
    t.kind = Kind::kMinors3x3Pair;
    t.a = std::stoi(s.substr(5, comma - 5));
    t.b = std::stoi(s.substr(comma + 1));
    if (t.a < 1 || t.a > 4 || t.b < 1 || t.b > 4 || t.a == t.b)
      throw std::invalid_argument("SepTestSpec: pair indices must be distinct in 1..4");
    return t;
  }
  throw std::invalid_argument("SepTestSpec: unknown test '" + s + "'");
}

bool run_sep_test(const SepTestSpec& test, const ZVec& z, double mu) {
  switch (test.kind) {
    case SepTestSpec::Kind::kFullPeres:
      // det route; valid given the precondition (at most one negative PT eigenvalue)
      return determinant<4>(pt_matrix(z, mu)) >= -kPsdTol;
    case SepTestSpec::Kind::kMinors2x2All: {
      const double a = z[kZ23] / mu, b = z[kZ14] * mu;
      if (1.0 - a * a < -kPsdTol || 1.0 - b * b < -kPsdTol) return false;
      for (int k = 0; k < 6; ++k)
        if (k != kZ14 && k != kZ23 && 1.0 - z[k] * z[k] < -kPsdTol) return false;
      return true;
    }
    case SepTestSpec::Kind::kMinor3x3Single:
      return minor3_fast(test.k, z, mu) >= -kPsdTol;
    case SepTestSpec::Kind::kMinors3x3Pair:
      return minor3_fast(test.a, z, mu) >= -kPsdTol && minor3_fast(test.b, z, mu) >= -kPsdTol;
  }
  return false;
}

Diag4 sample_diag_dirichlet(const std::array<double, 4>& alpha, const std::array<double, 3>& u) {
  // stick-breaking with Beta marginals
  const double b1 = boost::math::ibeta_inv(alpha[0], alpha[1] + alpha[2] + alpha[3], clamp_unit(u[0]));
  const double b2 = boost::math::ibeta_inv(alpha[1], alpha[2] + alpha[3], clamp_unit(u[1]));
  const double b3 = boost::math::ibeta_inv(alpha[2], alpha[3], clamp_unit(u[2]));
  Diag4 d;
  d[0] = b1;
  d[1] = (1.0 - d[0]) * b2;
  d[2] = (1.0 - d[0] - d[1]) * b3;
  d[3] = 1.0 - d[0] - d[1] - d[2];
  for (double& x : d) x = std::max(x, 1e-300);
  return d;
}

Diag4 sample_diag(BetaParameter beta, const std::array<double, 3>& u) {
  const double a = 1.5 * beta.value + 1.0;
  return sample_diag_dirichlet({a, a, a, a}, u);
}

DesfTable estimate_desf(const SepTestSpec& test, const XiGrid& grid, std::int64_t n,
                        const QmcOptions& opts) {
  struct Acc {
    std::int64_t accepted = 0;
    std::vector<std::int64_t> passed;
  };
  const int npts = grid.points;
  SobolSequence seq(6, opts.seed);
  auto accs = parallel_blocks<Acc>(n, opts, [&](std::int64_t, std::int64_t lo, std::int64_t hi, Acc& acc) {
    acc.passed.assign(npts, 0);
    double u[6];
    for (std::int64_t i = lo; i < hi; ++i) {
      seq.point_at(static_cast<std::uint64_t>(i), u);
      ZVec z;
      for (int d = 0; d < 6; ++d) z[d] = 2.0 * u[d] - 1.0;
      if (min_eigenvalue<4>(correlation_matrix(z)) < -kPsdTol) continue;
      ++acc.accepted;
      for (int g = 0; g < npts; ++g)
        if (run_sep_test(test, z, std::exp(grid.at(g)))) ++acc.passed[g];
    }
  });
  std::int64_t accepted = 0;
  std::vector<std::int64_t> passed(npts, 0);
  for (const Acc& a : accs) {
    accepted += a.accepted;
    for (int g = 0; g < npts; ++g) passed[g] += a.passed.empty() ? 0 : a.passed[g];
  }
  std::vector<std::int64_t> valid(npts, accepted);
  return bins_to_table(grid, valid, passed);
}

SepProbResult estimate_sep_prob(const SepTestSpec& test, BetaParameter beta, std::int64_t n,
                                const QmcOptions& opts, const XiGrid& grid) {
  if (beta.value == 4)
    throw std::invalid_argument("estimate_sep_prob: direct beta=4 sampling is out of scope");
  if (beta.value == 2 && test.kind != SepTestSpec::Kind::kFullPeres)
    throw std::invalid_argument("estimate_sep_prob: beta=2 supports the full-ph test only");

  const int npts = grid.points;
  const int dim = (beta.value == 1) ? 9 : 15;
  SobolSequence seq(dim, opts.seed);

  auto accs = parallel_blocks<BinAcc>(n, opts, [&](std::int64_t, std::int64_t lo, std::int64_t hi, BinAcc& acc) {
    acc.bin_valid.assign(npts, 0);
    acc.bin_passed.assign(npts, 0);
    double u[16];
    for (std::int64_t i = lo; i < hi; ++i) {
      seq.point_at(static_cast<std::uint64_t>(i), u);
      ++acc.total;
      const Diag4 d = sample_diag(beta, {u[0], u[1], u[2]});
      const double xi = 0.5 * std::log(d[0] * d[3] / (d[1] * d[2]));
      const double mu = std::exp(xi);
      bool valid = false, pass = false;
      if (beta.value == 1) {
        ZVec z;
        for (int k = 0; k < 6; ++k) z[k] = 2.0 * u[3 + k] - 1.0;
        valid = min_eigenvalue<4>(correlation_matrix(z)) >= -kPsdTol;
        if (valid) pass = run_sep_test(test, z, mu);
      } else {
        std::array<Cplx, 6> z;
        for (int k = 0; k < 6; ++k) z[k] = disk_point(u[3 + 2 * k], u[4 + 2 * k]);
        valid = hermitian_psd(z);
        if (valid)
          pass = min_eigenvalue<8>(embed_hermitian(hermitian_from_z(pt_complex(z, mu)))) >= -kPsdTol;
      }
      if (!valid) continue;
      ++acc.valid;
      if (pass) ++acc.passed;
      const int bidx = bin_index(grid, xi);
      if (bidx >= 0) {
        ++acc.bin_valid[bidx];
        if (pass) ++acc.bin_passed[bidx];
      }
    }
  });

  SepProbResult r;
  r.n_requested = n;
  std::vector<std::int64_t> bv(npts, 0), bp(npts, 0);
  std::int64_t valid = 0, passed = 0;
  for (const BinAcc& a : accs) {
    valid += a.valid;
    passed += a.passed;
    for (int g = 0; g < npts; ++g) {
      bv[g] += a.bin_valid.empty() ? 0 : a.bin_valid[g];
      bp[g] += a.bin_passed.empty() ? 0 : a.bin_passed[g];
    }
  }
  r.n_valid = valid;
  r.acceptance_rate = n > 0 ? static_cast<double>(valid) / static_cast<double>(n) : 0.0;
  r.estimate = Estimate::from_counts(passed, valid);
  r.binned = bins_to_table(grid, bv, bp);
  return r;
}

AbsoluteResult estimate_absolute(std::int64_t n, const QmcOptions& opts) {
  struct Acc {
    std::int64_t valid = 0, abs = 0, viol = 0;
  };
  SobolSequence seq(9, opts.seed);
  auto accs = parallel_blocks<Acc>(n, opts, [&](std::int64_t, std::int64_t lo, std::int64_t hi, Acc& acc) {
    double u[9];
    for (std::int64_t i = lo; i < hi; ++i) {
      seq.point_at(static_cast<std::uint64_t>(i), u);
      ZVec z;
      for (int k = 0; k < 6; ++k) z[k] = 2.0 * u[3 + k] - 1.0;
      if (min_eigenvalue<4>(correlation_matrix(z)) < -kPsdTol) continue;
      ++acc.valid;
      const Diag4 d = sample_diag(BetaParameter(1), {u[0], u[1], u[2]});
      BlooreState st{d, z};
      if (!absolutely_separable(st)) continue;
      ++acc.abs;
      const double mu = std::exp(0.5 * std::log(d[0] * d[3] / (d[1] * d[2])));
      if (determinant<4>(pt_matrix(z, mu)) < -kPsdTol) ++acc.viol;
    }
  });
  std::int64_t valid = 0, abs_cnt = 0, viol = 0;
  for (const auto& a : accs) {
    valid += a.valid;
    abs_cnt += a.abs;
    viol += a.viol;
  }
  AbsoluteResult r;
  r.n_valid = valid;
  r.implication_violations = viol;
  r.estimate = Estimate::from_counts(abs_cnt, valid);
  return r;
}

SepProbResult estimate_scenario(std::int64_t n, const QmcOptions& opts, const XiGrid& grid) {
  const int npts = grid.points;
  SobolSequence seq(9, opts.seed);
  auto accs = parallel_blocks<BinAcc>(n, opts, [&](std::int64_t, std::int64_t lo, std::int64_t hi, BinAcc& acc) {
    acc.bin_valid.assign(npts, 0);
    acc.bin_passed.assign(npts, 0);
    double u[9];
    for (std::int64_t i = lo; i < hi; ++i) {
      seq.point_at(static_cast<std::uint64_t>(i), u);
      ++acc.total;
      std::array<Cplx, 6> z{};
      z[kZ14] = disk_point(u[3], u[4]);
      z[kZ23] = disk_point(u[5], u[6]);
      z[kZ12] = disk_point(u[7], u[8]);
      if (!hermitian_psd(z)) continue;
      ++acc.valid;
      const Diag4 d = sample_diag_dirichlet({3.0, 3.0, 2.0, 2.0}, {u[0], u[1], u[2]});
      const double xi = 0.5 * std::log(d[0] * d[3] / (d[1] * d[2]));
      const double mu = std::exp(xi);
      const bool pass =
          min_eigenvalue<8>(embed_hermitian(hermitian_from_z(pt_complex(z, mu)))) >= -kPsdTol;
      if (pass) ++acc.passed;
      const int bidx = bin_index(grid, xi);
      if (bidx >= 0) {
        ++acc.bin_valid[bidx];
        if (pass) ++acc.bin_passed[bidx];
      }
    }
  });
  SepProbResult r;
  r.n_requested = n;
  std::vector<std::int64_t> bv(npts, 0), bp(npts, 0);
  std::int64_t valid = 0, passed = 0;
  for (const BinAcc& a : accs) {
    valid += a.valid;
    passed += a.passed;
    for (int g = 0; g < npts; ++g) {
      bv[g] += a.bin_valid.empty() ? 0 : a.bin_valid[g];
      bp[g] += a.bin_passed.empty() ? 0 : a.bin_passed[g];
    }
  }
  r.n_valid = valid;
  r.acceptance_rate = n > 0 ? static_cast<double>(valid) / static_cast<double>(n) : 0.0;
  r.estimate = Estimate::from_counts(passed, valid);
  r.binned = bins_to_table(grid, bv, bp);
  return r;
}

TableProbability desf_table_probability(const DesfTable& table, const JacobianCurve& jac) {
  TableProbability out;
  const std::size_t n = table.cells.size();
  if (n < 2) return out;
  for (std::size_t i = 0; i < n; ++i) {
    const DesfCell& c = table.cells[i];
    double h = 0.0;
    if (i > 0) h += 0.5 * (c.xi - table.cells[i - 1].xi);
    if (i + 1 < n) h += 0.5 * (table.cells[i + 1].xi - c.xi);
    const double w = h * jac(c.xi);
    out.value += w * c.s_hat;
    out.std_error += w * c.std_error;  // fully-correlated upper bound
  }
  return out;
}

}  // namespace sepprob
