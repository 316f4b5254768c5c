#include "sepprob/quadrature.hpp"

#include <cmath>
#include <vector>

#include "sepprob/gk.hpp"

namespace sepprob {

namespace {

constexpr double kXiCutoff = 40.0;

std::vector<double> line_breakpoints() {
  // Edges at tanh of round xi values; kinks of catalog curves sit at t = 0.
  static const std::vector<double> kXis = {0.25, 0.5, 1, 1.5, 2, 3, 4, 6, 8, 12, 18};
  std::vector<double> t;
  t.push_back(-1.0);
  for (auto it = kXis.rbegin(); it != kXis.rend(); ++it) t.push_back(-std::tanh(*it));
  t.push_back(0.0);
  for (double x : kXis) t.push_back(std::tanh(x));
  t.push_back(1.0);
  return t;
}

}  // namespace

QuadratureResult integrate_line(const std::function<double(double)>& f, double tol,
                                long max_evaluations) {
  auto g = [&f](double t) {
    if (t <= -1.0 || t >= 1.0) return 0.0;
    const double xi = std::atanh(t);
    if (std::fabs(xi) > kXiCutoff) return 0.0;
    return f(xi) / ((1.0 - t) * (1.0 + t));
  };
  static const std::vector<double> kBreaks = line_breakpoints();
  const auto panels = static_cast<std::size_t>(std::max(max_evaluations / 30L, 64L));
  const auto r = detail::adaptive_gk_panels(g, kBreaks, tol, panels);
  QuadratureResult out{r.value, r.error, r.evaluations};
  if (!r.converged || r.error > 10 * tol)
    throw QuadratureError("integrate_line: tolerance not reached within budget", out);
  return out;
}

double sep_probability(const DesfCurve& curve, const JacobianCurve& jac) {
  return integrate_line([&](double xi) { return curve(xi) * jac(xi); }, 1e-11).value;
}

double dirichlet_xi_marginal(const std::array<double, 4>& alpha, double xi) {
  // Marginal of xi = (1/2) log(d1 d4/(d2 d3)) for diagonal density
  // prod d_i^{alpha_i - 1}. With d1 = r u, d2 = r(1-u) the triangle integral
  // factorizes; the Beta(a1+a2, a3+a4) factor and the Dirichlet normalization
  // combine into the lgamma constant below, leaving one 1-D integral.
  const double a1 = alpha[0], a2 = alpha[1], a3 = alpha[2], a4 = alpha[3];
  const double nu = std::exp(2.0 * xi);
  const double pu = a1 + a3 - 1.0, pv = a2 + a4 - 1.0, pd = a3 + a4;
  // 2 B(a1+a2, a3+a4) Gamma(sum a)/prod Gamma(a_i); the Gamma(sum a) cancels.
  const double log_k = std::lgamma(a1 + a2) + std::lgamma(a3 + a4) - std::lgamma(a1) -
                       std::lgamma(a2) - std::lgamma(a3) - std::lgamma(a4);
  // nu^{a4} and d^{-pd} separately over/underflow at large |xi|; combine in
  // log space per evaluation.
  const double log_pre = std::log(2.0) + log_k + a4 * 2.0 * xi;
  auto integrand = [&](double u) {
    if (u <= 0.0 || u >= 1.0) return 0.0;
    const double d = u + nu * (1.0 - u);
    return std::exp(log_pre + pu * std::log(u) + pv * std::log1p(-u) - pd * std::log(d));
  };
  const auto g = detail::adaptive_gk_panels(integrand, {0.0, 0.25, 0.5, 0.75, 1.0}, 1e-13);
  return g.value;
}

double jacobian_numeric(BetaParameter beta, double xi) {
  const double a = 1.5 * beta.value + 1.0;
  return dirichlet_xi_marginal({a, a, a, a}, xi);
}

double power_class_probability(const DesfCurve& curve, BetaParameter beta) {
  if (beta.value != 2 && beta.value != 4)
    throw std::invalid_argument("power_class_probability: beta must be 2 or 4");
  const int p = beta.value;
  const double a = 1.5 * beta.value + 1.0;
  auto f = [&](double xi) {
    const double c = curve(xi);
    const double cp = (p == 2) ? c * c : (c * c) * (c * c);
    return cp * dirichlet_xi_marginal({a, a, a, a}, xi);
  };
  return integrate_line(f, 1e-10).value;
}

double boundary_halve(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("boundary_halve: p outside [0,1]");
  return 0.5 * p;
}

}  // namespace sepprob
