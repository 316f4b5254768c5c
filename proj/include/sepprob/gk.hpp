#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace sepprob::detail {

// 7-point Gauss / 15-point Kronrod pair (QUADPACK dqk15 abscissae/weights).
inline constexpr double kXgk15[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr double kWgk15[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr double kWg7[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
  double value;
  double error;
};

template <class F>
PanelEstimate gk15(F&& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  const double fc = f(c);
  double resg = kWg7[3] * fc;
  double resk = kWgk15[7] * fc;
  for (int i = 0; i < 7; ++i) {
    const double dx = h * kXgk15[i];
    const double fsum = f(c - dx) + f(c + dx);
    resk += kWgk15[i] * fsum;
    if (i % 2 == 1) resg += kWg7[i / 2] * fsum;
  }
  const double value = resk * h;
  double err = std::fabs((resk - resg) * h);
  err = 200.0 * err * std::sqrt(std::min(err, 1.0));  // QUADPACK-style sharpening
  return {value, std::max(err, std::fabs(value) * 1e-16)};
}

struct AdaptiveResult {
  double value = 0.0;
  double error = 0.0;
  long evaluations = 0;
  bool converged = true;
};

// Worst-panel-first refinement with a hard panel budget: splitting always
// targets the largest current error, so integrable singularities degrade into
// an honest non-convergence report instead of exhaustive subdivision. Single
// threaded, fixed split and summation order: results are bit-identical across
// runs.
template <class F>
AdaptiveResult adaptive_gk_worklist(F& f, const std::vector<double>& breakpoints, double abs_tol,
                                    std::size_t max_panels) {
  struct Panel {
    double a, b, value, error;
    bool splittable;
  };
  std::vector<Panel> panels;
  panels.reserve(256);
  AdaptiveResult out;

  auto make_panel = [&](double a, double b) {
    const PanelEstimate e = gk15(f, a, b);
    out.evaluations += 15;
    const double m = 0.5 * (a + b);
    panels.push_back({a, b, e.value, e.error, m > a && m < b});
  };
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
    make_panel(breakpoints[i], breakpoints[i + 1]);

  double total_err = 0.0;
  for (const Panel& p : panels) total_err += p.error;
  while (total_err > abs_tol && panels.size() < max_panels) {
    std::size_t worst = panels.size();
    double worst_err = 0.0;
    for (std::size_t i = 0; i < panels.size(); ++i)
      if (panels[i].splittable && panels[i].error > worst_err) {
        worst_err = panels[i].error;
        worst = i;
      }
    if (worst == panels.size()) break;  // nothing left to split
    const Panel p = panels[worst];
    const double m = 0.5 * (p.a + p.b);
    panels.erase(panels.begin() + static_cast<std::ptrdiff_t>(worst));
    make_panel(p.a, m);
    make_panel(m, p.b);
    total_err = 0.0;
    for (const Panel& q : panels) total_err += q.error;
  }

  // sum in position order
  std::sort(panels.begin(), panels.end(),
            [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const Panel& p : panels) {
    out.value += p.value;
    out.error += p.error;
  }
  out.converged = out.error <= abs_tol;
  return out;
}

template <class F>
AdaptiveResult adaptive_gk(F&& f, double a, double b, double abs_tol,
                           std::size_t max_panels = 4096) {
  const std::vector<double> breaks = {a, b};
  return adaptive_gk_worklist(f, breaks, abs_tol, max_panels);
}

template <class F>
AdaptiveResult adaptive_gk_panels(F&& f, const std::vector<double>& breakpoints, double abs_tol,
                                  std::size_t max_panels = 8192) {
  return adaptive_gk_worklist(f, breakpoints, abs_tol, max_panels);
}

}  // namespace sepprob::detail
