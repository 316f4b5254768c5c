#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <numbers>

#include "sepprob/bloore.hpp"
#include "sepprob/desf.hpp"
#include "sepprob/gk.hpp"
#include "sepprob/qmc.hpp"
#include "sepprob/sobol.hpp"

using namespace sepprob;

namespace {

QmcOptions fast_opts(int threads = 0) {
  QmcOptions o;
  o.seed = 2024;
  o.threads = threads;
  return o;
}

bool tables_identical(const DesfTable& a, const DesfTable& b) {
  if (a.cells.size() != b.cells.size()) return false;
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const auto& x = a.cells[i];
    const auto& y = b.cells[i];
    if (x.xi != y.xi || x.s_hat != y.s_hat || x.std_error != y.std_error ||
        x.n_accepted != y.n_accepted || x.flagged != y.flagged)
      return false;
  }
  return true;
}

}  // namespace

TEST_CASE("sample_diag simplex membership and symmetry") {
  SobolSequence seq(3, 77);
  double u[3];
  double mean[4] = {};
  const int n = 100000;
  for (int i = 0; i < n; ++i) {
    seq.next(u);
    const Diag4 d = sample_diag(BetaParameter(1), {u[0], u[1], u[2]});
    double s = 0;
    for (int k = 0; k < 4; ++k) {
      CHECK(d[k] >= 0.0);
      s += d[k];
      mean[k] += d[k];
    }
    CHECK(s == doctest::Approx(1.0).epsilon(1e-13));
  }
  // coordinate sd is ~0.13; QMC mean error is far below 3 sd/sqrt(n)
  for (int k = 0; k < 4; ++k) CHECK(mean[k] / n == doctest::Approx(0.25).epsilon(5e-3));
}

TEST_CASE("sample_diag_dirichlet asymmetric means") {
  SobolSequence seq(3, 78);
  double u[3];
  double mean[4] = {};
  const int n = 60000;
  for (int i = 0; i < n; ++i) {
    seq.next(u);
    const Diag4 d = sample_diag_dirichlet({3, 3, 2, 2}, {u[0], u[1], u[2]});
    for (int k = 0; k < 4; ++k) mean[k] += d[k];
  }
  CHECK(mean[0] / n == doctest::Approx(0.3).epsilon(5e-3));
  CHECK(mean[1] / n == doctest::Approx(0.3).epsilon(5e-3));
  CHECK(mean[2] / n == doctest::Approx(0.2).epsilon(5e-3));
  CHECK(mean[3] / n == doctest::Approx(0.2).epsilon(5e-3));
}

TEST_CASE("xi of sampled diagonals is distributed like the jacobian") {
  SobolSequence seq(3, 79);
  double u[3];
  const int n = 200000;
  const int nbins = 24;
  const double lo = -3.0, hi = 3.0, h = (hi - lo) / nbins;
  std::vector<long> hits(nbins, 0);
  long inside = 0;
  for (int i = 0; i < n; ++i) {
    seq.next(u);
    const Diag4 d = sample_diag(BetaParameter(1), {u[0], u[1], u[2]});
    const double xi = xi_of(d).xi;
    if (xi < lo || xi >= hi) continue;
    ++hits[static_cast<int>((xi - lo) / h)];
    ++inside;
  }
  CHECK(inside > 0.95 * n);
  double chi2 = 0.0;
  for (int b = 0; b < nbins; ++b) {
    const double a = lo + b * h;
    const double p = detail::adaptive_gk([](double x) { return jacobian_closed(x); }, a, a + h, 1e-10).value;
    const double expect = p * n;
    chi2 += (hits[b] - expect) * (hits[b] - expect) / expect;
  }
  // iid chi^2(24) would concentrate near 24; QMC sits well below
  CHECK(chi2 < 60.0);
}

TEST_CASE("run_sep_test agrees with the minor API") {
  SobolSequence seq(7, 80);
  double u[7];
  int tested = 0;
  for (int i = 0; i < 4000; ++i) {
    seq.next(u);
    ZVec z;
    for (int k = 0; k < 6; ++k) z[k] = 2 * u[k] - 1;
    if (!correlation_psd(z)) continue;
    const double x = 3.0 * (u[6] - 0.5);
    const auto xi = XiValue::from_xi(x);
    for (int k = 1; k <= 4; ++k) {
      SepTestSpec t{SepTestSpec::Kind::kMinor3x3Single, k, 0, 0};
      const bool fast = run_sep_test(t, z, xi.mu);
      const bool api = pt_principal_minor(z, xi, 3, k) >= -kPsdTol;
      CHECK(fast == api);
    }
    // full test vs eigenvalue route
    SepTestSpec full{};
    const bool det_route = run_sep_test(full, z, xi.mu);
    const Mat4 zp = correlation_matrix(pt_correlation(z, xi));
    const double mineig = min_eigenvalue<4>(zp);
    if (std::fabs(mineig) > 1e-9) CHECK(det_route == (mineig >= 0.0));
    ++tested;
  }
  CHECK(tested > 500);
}

TEST_CASE("sep test spec parsing") {
  CHECK(SepTestSpec::parse("full-ph").kind == SepTestSpec::Kind::kFullPeres);
  CHECK(SepTestSpec::parse("2x2").kind == SepTestSpec::Kind::kMinors2x2All);
  CHECK(SepTestSpec::parse("3x3:2").k == 2);
  const auto p = SepTestSpec::parse("pair:1,4");
  CHECK(p.a == 1);
  CHECK(p.b == 4);
  CHECK(p.name() == "pair:1,4");
  CHECK_THROWS_AS(SepTestSpec::parse("bogus"), std::invalid_argument);
  CHECK_THROWS_AS(SepTestSpec::parse("3x3:7"), std::invalid_argument);
}

TEST_CASE("estimate_desf sanity against known curves") {
  XiGrid grid{-2.0, 2.0, 5};  // {-2,-1,0,1,2}
  const auto table = estimate_desf(SepTestSpec{}, grid, 200000, fast_opts());
  REQUIRE(table.cells.size() == 5);
  // acceptance fraction of the PSD region is ~0.1828
  CHECK(table.cells[2].n_accepted > 30000);
  CHECK(table.cells[2].s_hat == doctest::Approx(0.612243).epsilon(0.02));
  // even within 3 SE
  for (int i = 0; i < 2; ++i) {
    const auto& a = table.cells[i];
    const auto& b = table.cells[4 - i];
    const double se = std::sqrt(a.std_error * a.std_error + b.std_error * b.std_error);
    CHECK(std::fabs(a.s_hat - b.s_hat) <= 3 * se + 1e-12);
  }

  // single 3x3 minor matches the catalog curve
  SepTestSpec single{SepTestSpec::Kind::kMinor3x3Single, 4, 0, 0};
  const auto t4 = estimate_desf(single, XiGrid{-1.0, 1.0, 3}, 200000, fast_opts());
  const auto s3 = catalog("s3x3");
  for (const auto& c : t4.cells)
    CHECK(std::fabs(c.s_hat - s3(c.xi)) <= 3 * c.std_error + 1e-12);

  // all-six 2x2 test gives the dominant curve (even), including xi < 0
  SepTestSpec m2{SepTestSpec::Kind::kMinors2x2All, 0, 0, 0};
  const auto t2 = estimate_desf(m2, XiGrid{-2.0, 2.0, 3}, 200000, fast_opts());
  const auto dom = catalog("dominant");
  for (const auto& c : t2.cells)
    CHECK(std::fabs(c.s_hat - dom(c.xi)) <= 3 * c.std_error + 1e-12);
}

TEST_CASE("estimate_desf dominance chain and flagging") {
  // The chain compares the spliced relaxations, as in the figure orderings:
  // full <= min over the two same-type pairs <= min over single minors <= 2x2.
  XiGrid grid{-1.5, 1.5, 7};
  const std::int64_t n = 120000;
  const auto full = estimate_desf(SepTestSpec{}, grid, n, fast_opts());
  const auto pair14 = estimate_desf(SepTestSpec{SepTestSpec::Kind::kMinors3x3Pair, 0, 1, 4}, grid,
                                    n, fast_opts());
  const auto pair23 = estimate_desf(SepTestSpec{SepTestSpec::Kind::kMinors3x3Pair, 0, 2, 3}, grid,
                                    n, fast_opts());
  const auto single2 = estimate_desf(SepTestSpec{SepTestSpec::Kind::kMinor3x3Single, 2, 0, 0},
                                     grid, n, fast_opts());
  const auto single4 = estimate_desf(SepTestSpec{SepTestSpec::Kind::kMinor3x3Single, 4, 0, 0},
                                     grid, n, fast_opts());
  const auto m2 = estimate_desf(SepTestSpec{SepTestSpec::Kind::kMinors2x2All, 0, 0, 0}, grid, n,
                                fast_opts());
  for (int g = 0; g < grid.points; ++g) {
    const double pair_min = std::min(pair14.cells[g].s_hat, pair23.cells[g].s_hat);
    const double single_min = std::min(single2.cells[g].s_hat, single4.cells[g].s_hat);
    // shared samples and nested constraints: the first two links hold
    // sample-pointwise
    CHECK(full.cells[g].s_hat <= pair_min + 1e-12);
    CHECK(pair_min <= single_min + 1e-12);
    const double se = 3 * std::sqrt(single4.cells[g].std_error * single4.cells[g].std_error +
                                    m2.cells[g].std_error * m2.cells[g].std_error);
    CHECK(single_min <= m2.cells[g].s_hat + se + 1e-12);
  }

  const auto tiny = estimate_desf(SepTestSpec{}, XiGrid{0.0, 1.0, 2}, 300, fast_opts());
  for (const auto& c : tiny.cells) CHECK(c.flagged);
}

TEST_CASE("estimate_desf deterministic across thread counts") {
  XiGrid grid{-1.0, 1.0, 5};
  const auto t1 = estimate_desf(SepTestSpec{}, grid, 30000, fast_opts(1));
  const auto t2 = estimate_desf(SepTestSpec{}, grid, 30000, fast_opts(2));
  const auto t3 = estimate_desf(SepTestSpec{}, grid, 30000, fast_opts(3));
  CHECK(tables_identical(t1, t2));
  CHECK(tables_identical(t1, t3));

  QmcOptions other = fast_opts();
  other.seed = 999;
  const auto t4 = estimate_desf(SepTestSpec{}, grid, 30000, other);
  CHECK_FALSE(tables_identical(t1, t4));
}

TEST_CASE("estimate_sep_prob beta=1") {
  const auto r = estimate_sep_prob(SepTestSpec{}, BetaParameter(1), 300000, fast_opts());
  CHECK(r.acceptance_rate == doctest::Approx(0.1828).epsilon(0.05));
  CHECK(r.estimate.mean == doctest::Approx(0.4528).epsilon(0.01));
  CHECK(r.estimate.ci_high - r.estimate.ci_low == doctest::Approx(8 * r.estimate.std_error));
  // binned DESF integrated against J agrees with the direct mean
  const auto tp = desf_table_probability(r.binned);
  CHECK(tp.value == doctest::Approx(r.estimate.mean).epsilon(0.02));

  // thread determinism of the full result
  const auto a = estimate_sep_prob(SepTestSpec{}, BetaParameter(1), 50000, fast_opts(1));
  const auto b = estimate_sep_prob(SepTestSpec{}, BetaParameter(1), 50000, fast_opts(2));
  CHECK(a.estimate.mean == b.estimate.mean);
  CHECK(a.n_valid == b.n_valid);
  CHECK(tables_identical(a.binned, b.binned));
}

TEST_CASE("estimate_sep_prob validation") {
  CHECK_THROWS_AS(estimate_sep_prob(SepTestSpec{}, BetaParameter(4), 100, fast_opts()),
                  std::invalid_argument);
  SepTestSpec m2{SepTestSpec::Kind::kMinors2x2All, 0, 0, 0};
  CHECK_THROWS_AS(estimate_sep_prob(m2, BetaParameter(2), 100, fast_opts()),
                  std::invalid_argument);
}

TEST_CASE("estimate_sep_prob beta=2 small run") {
  const auto r = estimate_sep_prob(SepTestSpec{}, BetaParameter(2), 400000, fast_opts());
  CHECK(r.n_valid > 1000);
  CHECK(r.estimate.mean == doctest::Approx(8.0 / 33).epsilon(0.12));
}

TEST_CASE("estimate_absolute small run") {
  const auto r = estimate_absolute(300000, fast_opts());
  CHECK(r.implication_violations == 0);
  CHECK(r.estimate.mean == doctest::Approx(0.0348338).epsilon(0.1));
}

TEST_CASE("estimate_scenario small run") {
  const auto r = estimate_scenario(200000, fast_opts());
  CHECK(r.estimate.mean == doctest::Approx(17.0 / 35).epsilon(0.02));
  // binned DESF matches the catalog scenario curve where populated; the
  // xi = 0 bin is skipped here because the curve has a kink at 0 and the bin
  // average sits measurably below the peak value (the acceptance suite
  // compares against the exact bin average instead)
  const auto sc = catalog("scenario_complex_pair");
  int compared = 0;
  for (const auto& c : r.binned.cells) {
    if (c.flagged || std::fabs(c.xi) > 1.5 || std::fabs(c.xi) < 0.05) continue;
    CHECK(std::fabs(c.s_hat - sc(c.xi)) <= 4 * c.std_error + 0.01);
    ++compared;
  }
  CHECK(compared > 10);
}
