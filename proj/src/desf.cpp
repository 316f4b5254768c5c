#include "sepprob/desf.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sepprob {

namespace {

constexpr double kPi = std::numbers::pi;
const double kPi2 = kPi * kPi;

double sq(double x) { return x * x; }

// --- catalog branch formulas ------------------------------------------------
// All as printed, with sqrt(1 - e^{2x}) = sqrt(-expm1(2x)) and
// sqrt(e^{2x} - 1) = sqrt(expm1(2x)) for stability near 0.

double dom_pos(double x) { return 0.5 * std::exp(-3 * x) * (3 * std::exp(2 * x) - 1); }
double dom_neg(double x) { return -0.5 * std::exp(x) * (std::exp(2 * x) - 3); }

double int_pos(double x) { return 9 * kPi2 / 2048 * std::exp(-3 * x) * (27 * std::exp(2 * x) - 7); }
double int_neg(double x) { return -9 * kPi2 / 2048 * std::exp(x) * (7 * std::exp(2 * x) - 27); }

double s3x3_neg(double x) {
  const double ex = std::exp(x), e2 = std::exp(2 * x);
  const double root = std::sqrt(std::max(-std::expm1(2 * x), 0.0));
  return 3 * kPi * std::exp(-3 * x) *
         (ex * root * (37 * e2 + 2 * e2 * e2 + 21) + 3 * (27 * e2 - 7) * std::asin(ex)) / 1024;
}

double s2x2_pos(double x) { return std::exp(-2 * x) * (2 * std::sinh(x) + std::cosh(x)); }
double s2x2_neg(double) { return 1.0; }

double conj_pos(double x) { return 315 * kPi2 / 65536 * std::exp(-3 * x) * (18 * std::exp(2 * x) - 5); }
double conj_neg(double x) { return -315 * kPi2 / 65536 * std::exp(x) * (5 * std::exp(2 * x) - 18); }

double prev_pos(double x) { return 135 * kPi2 / 4352 * std::exp(-3 * x) * (3 * std::exp(2 * x) - 1); }
double prev_neg(double x) { return -135 * kPi2 / 4352 * std::exp(x) * (std::exp(2 * x) - 3); }

double scen_pos(double x) { return std::exp(-4 * x) * (4 * std::exp(2 * x) - 1) / 3.0; }
double scen_neg(double x) { return -std::exp(2 * x) * (std::exp(2 * x) - 4) / 3.0; }

double newdom_pos(double x) {
  const double ex = std::exp(x), e2 = std::exp(2 * x);
  const double e4 = e2 * e2, e6 = e4 * e2;
  const double root = std::sqrt(std::max(std::expm1(2 * x), 0.0));
  return -(kPi * std::exp(-6 * x) *
           (root * (1696 * e2 - 7665 * e4 - 5346 * e6 + 188) +
            3 * e4 * (-7273 * e2 + 1782 * e4 + 1782) * std::asin(1.0 / ex))) /
         71680;
}
double newdom_neg(double x) {
  const double ex = std::exp(x), e2 = std::exp(2 * x);
  const double e4 = e2 * e2, e6 = e4 * e2;
  const double root = std::sqrt(std::max(-std::expm1(2 * x), 0.0));
  return -(kPi * std::exp(-2 * x) *
           (ex * root * (-7665 * e2 + 1696 * e4 + 188 * e6 - 5346) +
            3 * (-7273 * e2 + 1782 * e4 + 1782) * std::asin(ex))) /
         71680;
}

double newint_pos(double x) { return 3 * kPi2 / 573440 * std::exp(-3 * x) * (18873 * std::exp(2 * x) - 4037); }
double newint_neg(double x) { return 3 * kPi2 / 573440 * std::exp(x) * (18873 - 4037 * std::exp(2 * x)); }

double greater_pos(double x) {
  const double e2 = std::exp(2 * x);
  return -(3 * kPi2 * std::exp(-6 * x) * (3 * e2 * (91 * e2 * (9 - 65 * e2) + 144) + 20)) / 573440;
}
double greater_neg(double x) {
  const double e2 = std::exp(2 * x);
  return -(3 * kPi2 * (2457 * e2 + 432 * e2 * e2 + 20 * e2 * e2 * e2 - 17745)) / 573440;
}

}  // namespace

DesfCurve::DesfCurve(std::string name, std::function<double(double)> neg_branch,
                     std::function<double(double)> pos_branch)
    : name_(std::move(name)), neg_(std::move(neg_branch)), pos_(std::move(pos_branch)) {
  at_zero_ = 0.5 * (neg_(0.0) + pos_(0.0));
}

DesfCurve catalog(const std::string& name) {
  if (name == "dominant") return {name, dom_neg, dom_pos};
  if (name == "intermediate") return {name, int_neg, int_pos};
  if (name == "s3x3") return {name, s3x3_neg, int_pos};
  if (name == "s2x2") return {name, s2x2_neg, s2x2_pos};
  if (name == "conjecture") return {name, conj_neg, conj_pos};
  if (name == "previous_conjecture") return {name, prev_neg, prev_pos};
  if (name == "scenario_complex_pair") return {name, scen_neg, scen_pos};
  if (name == "paired_dominant") return {name, newdom_neg, newdom_pos};
  if (name == "paired_intermediate") return {name, newint_neg, newint_pos};
  if (name == "paired_greater") return {name, greater_neg, greater_pos};
  throw std::invalid_argument("catalog: unknown curve name '" + name + "'");
}

std::vector<std::string> catalog_names() {
  return {"dominant",       "intermediate",        "s3x3",
          "s2x2",           "conjecture",          "previous_conjecture",
          "scenario_complex_pair", "paired_dominant", "paired_intermediate",
          "paired_greater"};
}

DesfCurve reflect(const DesfCurve& c) {
  return {"reflect(" + c.name() + ")", [p = c.pos_branch()](double x) { return p(-x); },
          [n = c.neg_branch()](double x) { return n(-x); }};
}

DesfCurve envelope_min(const DesfCurve& a, const DesfCurve& b) {
  return {"min(" + a.name() + "," + b.name() + ")",
          [na = a.neg_branch(), nb = b.neg_branch()](double x) { return std::min(na(x), nb(x)); },
          [pa = a.pos_branch(), pb = b.pos_branch()](double x) { return std::min(pa(x), pb(x)); }};
}

DesfCurve product(const DesfCurve& a, const DesfCurve& b) {
  return {a.name() + "*" + b.name(),
          [na = a.neg_branch(), nb = b.neg_branch()](double x) { return na(x) * nb(x); },
          [pa = a.pos_branch(), pb = b.pos_branch()](double x) { return pa(x) * pb(x); }};
}

DesfCurve power(const DesfCurve& c, int k) {
  if (k != 2 && k != 4) throw std::invalid_argument("power: exponent must be 2 or 4");
  auto raise = [k](double v) { return k == 2 ? sq(v) : sq(sq(v)); };
  return {c.name() + "^" + std::to_string(k),
          [n = c.neg_branch(), raise](double x) { return raise(n(x)); },
          [p = c.pos_branch(), raise](double x) { return raise(p(x)); }};
}

// --- jacobian ----------------------------------------------------------------

namespace detail {

namespace {

// Even Taylor coefficients of g(x) = num(x)/sinh^9(x), J = 64 g / (27 pi^2).
// Exact rationals a_k of g = sum a_k x^{2k}; radius of convergence pi.
constexpr double kGSeries[] = {
    2.438095238095238095238095e+00, -2.770562770562770562770563e+00,
    1.687201687201687201687202e+00, -7.323047323047323047323047e-01,
    2.541964726838676418508351e-01, -7.507605194960838972829734e-02,
    1.960238111407776509330156e-02, -4.642517969124760050917167e-03,
    1.015693239879456549680553e-03, -2.080641593776191641700687e-04,
    4.032064661186312918990856e-05, -7.451533787435451033856927e-06,
    1.321707946535671807650869e-06, -2.261792912814910698224257e-07,
    3.750178010671804930134961e-08, -6.046101368730084981801190e-09,
    9.506506805390608890461834e-10, -1.461470619055721654650909e-10,
    2.201537001118006376171890e-11, -3.255685014710508781072781e-12,
    4.734194701819996574427513e-13, -6.778834909010396259453490e-14,
    9.570009662843716200916156e-15};

// sinh(x) minus its Taylor polynomial through x^7: sum_{k>=4} x^{2k+1}/(2k+1)!.
// All-positive series for x > 0, so no cancellation at any argument.
double sinh_tail(double x) {
  const double ax = std::fabs(x);
  if (ax > 12.0) {
    const double x2 = x * x;
    const double poly = x * (1.0 + x2 / 6.0 * (1.0 + x2 / 20.0 * (1.0 + x2 / 42.0)));
    return std::sinh(x) - poly;
  }
  const double x2 = x * x;
  double term = x * x2 * x2 * x2 * x2 / 362880.0;  // x^9/9!
  double s = term;
  for (int k = 5; k < 40; ++k) {
    term *= x2 / (2.0 * k * (2.0 * k + 1.0));
    s += term;
    if (std::fabs(term) < 1e-18 * std::fabs(s)) break;
  }
  return s;
}

// cosh(x) minus its Taylor polynomial through x^6.
double cosh_tail(double x) {
  const double ax = std::fabs(x);
  if (ax > 12.0) {
    const double x2 = x * x;
    const double poly = 1.0 + x2 / 2.0 * (1.0 + x2 / 12.0 * (1.0 + x2 / 30.0));
    return std::cosh(x) - poly;
  }
  const double x2 = x * x;
  double term = x2 * x2 * x2 * x2 / 40320.0;  // x^8/8!
  double s = term;
  for (int k = 5; k < 40; ++k) {
    term *= x2 / ((2.0 * k - 1.0) * 2.0 * k);
    s += term;
    if (std::fabs(term) < 1e-18 * std::fabs(s)) break;
  }
  return s;
}

}  // namespace

double jacobian_direct(double xi) {
  const double ax = std::fabs(xi);
  if (ax > 45.0) return 0.0;  // below 1e-97; tail cutoff
  // The degree <= 7 parts of the printed numerator cancel identically, so the
  // numerator equals the same combination of the series tails.
  const double num = -160.0 * sinh_tail(2 * xi) - 25.0 * sinh_tail(4 * xi) +
                     12.0 * xi * (16.0 * cosh_tail(2 * xi) + cosh_tail(4 * xi));
  const double s = std::sinh(xi);
  const double s3 = s * s * s;
  return 64.0 * num / (s3 * s3 * s3) / (27.0 * kPi2);
}

double jacobian_series(double xi) {
  const double x2 = xi * xi;
  double g = 0.0;
  for (int k = static_cast<int>(std::size(kGSeries)) - 1; k >= 0; --k) g = g * x2 + kGSeries[k];
  return 64.0 * g / (27.0 * kPi2);
}

}  // namespace detail

double jacobian_closed(double xi) {
  return std::fabs(xi) < 1e-3 ? detail::jacobian_series(xi) : detail::jacobian_direct(xi);
}

}  // namespace sepprob
