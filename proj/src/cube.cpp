#include "sepprob/cube.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sepprob/bloore.hpp"
#include "sepprob/gk.hpp"

namespace sepprob {

namespace {

// Minor k in z coordinates (E = e^{xi} for k in {1,4}, e^{-xi} for k in {2,3}):
//   m = 1 + 2 E a b c - a^2 - b^2 - E^2 c^2
// with c the E^2-weighted variable (z14 for k in {1,4}, z23 for k in {2,3}).
// As a quadratic in either b or c the minor's root pair has discriminant
// (1-.^2)(1-E^2 c^2) resp. (1-a^2)(1-b^2), so every inner integration step
// reduces to the weight's antiderivative between clipped roots.

double weight(double t) { return 0.75 * (1.0 - t * t); }

// int_{lo}^{hi} (3/4)(1-c^2) dc clipped to [-1,1].
double weight_between(double lo, double hi) {
  lo = std::max(lo, -1.0);
  hi = std::min(hi, 1.0);
  if (hi <= lo) return 0.0;
  auto F = [](double c) { return 0.75 * (c - c * c * c / 3.0); };
  return F(hi) - F(lo);
}

constexpr double kTolInner = 1e-11;
constexpr double kTolOuter = 1e-9;

// 2-D reduction of one minor onto its weighted variable s (= c above):
// integrate the two plain variables, innermost in closed form.
double reduce_to_weighted(double s, double E, bool drop_indicator) {
  if (drop_indicator) return 1.0;
  const double q = 1.0 - E * E * s * s;
  if (q < 0.0) return 0.0;
  auto inner = [&](double a) {
    const double d = std::sqrt(std::max((1.0 - a * a) * q, 0.0));
    const double m = E * a * s;
    return weight(a) * weight_between(m - d, m + d);
  };
  return detail::adaptive_gk_panels(inner, {-1.0, 0.0, 1.0}, kTolInner).value;
}

// 2-D reduction of one minor onto one of its plain variables s: integrate the
// weighted variable c adaptively, the other plain variable in closed form.
double reduce_to_plain(double s, double E, bool drop_indicator) {
  if (drop_indicator) return 1.0;
  const double cmax = std::min(1.0, 1.0 / E);
  const double p = 1.0 - s * s;
  auto inner = [&](double c) {
    const double d = std::sqrt(std::max(p * (1.0 - E * E * c * c), 0.0));
    const double m = E * s * c;
    return weight(c) * weight_between(m - d, m + d);
  };
  return detail::adaptive_gk_panels(inner, {-cmax, 0.0, cmax}, kTolInner).value;
}

bool plus_type(int k) { return k == 1 || k == 4; }

void check_minor_index(int k) {
  if (k < 1 || k > 4) throw std::invalid_argument("cube: minor index must be 1..4");
}

}  // namespace

int CubeSchemeSpec::shared_variable(int a, int b) {
  check_minor_index(a);
  check_minor_index(b);
  if (a == b) throw std::invalid_argument("CubeSchemeSpec: minors must differ");
  if (a > b) std::swap(a, b);
  if (a == 1 && b == 4) return kZ14;
  if (a == 2 && b == 3) return kZ23;
  if (a == 1 && b == 2) return kZ34;
  if (a == 1 && b == 3) return kZ24;
  if (a == 2 && b == 4) return kZ13;
  return kZ12;  // (3,4)
}

CubeSchemeSpec CubeSchemeSpec::single(int k) {
  check_minor_index(k);
  return {{k}};
}
CubeSchemeSpec CubeSchemeSpec::paired(int a, int b) {
  check_minor_index(a);
  check_minor_index(b);
  if (a == b) throw std::invalid_argument("CubeSchemeSpec: minors must differ");
  return {{a, b}};
}
CubeSchemeSpec CubeSchemeSpec::triple() { return {{2, 3, 4}}; }

std::string CubeSchemeSpec::describe() const {
  std::string s = "minors{";
  for (std::size_t i = 0; i < minors.size(); ++i)
    s += (i ? "," : "") + std::to_string(minors[i]);
  return s + "}, weight (3/4)(1-z^2) per integration step";
}

double cube_single(int k, double xi, bool drop_indicator) {
  check_minor_index(k);
  const double E = plus_type(k) ? std::exp(xi) : std::exp(-xi);
  const double smax = drop_indicator ? 1.0 : std::min(1.0, 1.0 / E);
  auto f = [&](double s) { return weight(s) * reduce_to_weighted(s, E, drop_indicator); };
  return detail::adaptive_gk_panels(f, {-smax, 0.0, smax}, kTolOuter).value;
}

double cube_paired(int a, int b, double xi, bool drop_indicator) {
  const int shared = CubeSchemeSpec::shared_variable(a, b);
  if (shared == kZ14 || shared == kZ23) {
    // same-type pair: the shared variable is both minors' weighted variable
    const double E = (shared == kZ14) ? std::exp(xi) : std::exp(-xi);
    const double smax = drop_indicator ? 1.0 : std::min(1.0, 1.0 / E);
    auto f = [&](double s) {
      const double r = reduce_to_weighted(s, E, drop_indicator);
      return weight(s) * r * r;
    };
    return detail::adaptive_gk_panels(f, {-smax, 0.0, smax}, kTolOuter).value;
  }
  // mixed pair: one +type, one -type, shared variable plain in both
  const double Ep = std::exp(xi), Em = std::exp(-xi);
  auto f = [&](double s) {
    return weight(s) * reduce_to_plain(s, Ep, drop_indicator) *
           reduce_to_plain(s, Em, drop_indicator);
  };
  return detail::adaptive_gk_panels(f, {-1.0, 0.0, 1.0}, kTolOuter).value;
}

double cube_triple(double xi, bool drop_indicator) {
  const double Em = std::exp(-xi);
  // minor 4 reduced over its private z14 (weighted variable, E = e^{xi}):
  auto g4 = [&](double z12, double z13) {
    if (drop_indicator) return 1.0;
    const double d = std::sqrt(std::max((1.0 - z12 * z12) * (1.0 - z13 * z13), 0.0));
    const double m = z12 * z13;
    return weight_between(Em * (m - d), Em * (m + d));
  };
  // minors 3 and 2 reduced over their private plain variables z24 resp. z34;
  // both need |e^{-xi} z23| <= 1.
  auto g_minus = [&](double zx, double z23) {
    if (drop_indicator) return 1.0;
    const double t = 1.0 - Em * Em * z23 * z23;
    if (t < 0.0) return 0.0;
    const double d = std::sqrt(std::max((1.0 - zx * zx) * t, 0.0));
    const double m = Em * zx * z23;
    return weight_between(m - d, m + d);
  };
  const double z23max = drop_indicator ? 1.0 : std::min(1.0, std::exp(xi));
  auto inner = [&](double z13, double z23) {
    auto h = [&](double z12) { return weight(z12) * g4(z12, z13) * g_minus(z12, z23); };
    return detail::adaptive_gk_panels(h, {-1.0, 0.0, 1.0}, 1e-9).value;
  };
  auto mid = [&](double z23) {
    auto h = [&](double z13) { return weight(z13) * g_minus(z13, z23) * inner(z13, z23); };
    return detail::adaptive_gk_panels(h, {-1.0, 0.0, 1.0}, 1e-8).value;
  };
  auto outer = [&](double z23) { return weight(z23) * mid(z23); };
  return detail::adaptive_gk_panels(outer, {-z23max, 0.0, z23max}, 1e-7).value;
}

}  // namespace sepprob
