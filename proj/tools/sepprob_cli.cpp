// Command-line front end: bounds, curves, desf, estimate, cube, jacobian,
// report, selfcheck. Exit codes: 0 pass, 1 numerical failure, 2 usage error.
#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sepprob/cube.hpp"
#include "sepprob/desf.hpp"
#include "sepprob/io.hpp"
#include "sepprob/qmc.hpp"
#include "sepprob/quadrature.hpp"
#include "sepprob/selfcheck.hpp"

namespace {

using namespace sepprob;

constexpr double kPi2v = std::numbers::pi * std::numbers::pi;

struct GridSpec {
  double lo = -4.0, hi = 4.0, step = 0.1;
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  if (s.empty()) return g;
  std::string t = s;
  std::replace(t.begin(), t.end(), ':', ' ');
  std::istringstream is(t);
  if (!(is >> g.lo >> g.hi >> g.step) || g.step <= 0 || g.hi <= g.lo)
    throw CLI::ValidationError("--grid expects lo:hi:step with step > 0 and hi > lo");
  return g;
}

XiGrid to_xi_grid(const GridSpec& g) {
  XiGrid xg;
  xg.lo = g.lo;
  xg.hi = g.hi;
  xg.points = static_cast<int>(std::lround((g.hi - g.lo) / g.step)) + 1;
  return xg;
}

struct BoundRow {
  std::string name;
  double computed;
  double target;
  double tol;
};

int run_bounds(RunConfig cfg) {
  const double pi4 = kPi2v * kPi2v;
  const double pi8 = pi4 * pi4;
  std::vector<BoundRow> rows;
  rows.push_back({"jacobian_normalization",
                  integrate_line([](double x) { return jacobian_closed(x); }, 1e-11).value, 1.0,
                  1e-9});
  rows.push_back({"dominant", sep_probability(catalog("dominant")), 1024.0 / (135.0 * kPi2v), 1e-9});
  rows.push_back({"intermediate", sep_probability(catalog("intermediate")), 22.0 / 35.0, 1e-9});
  rows.push_back({"paired_intermediate", sep_probability(catalog("paired_intermediate")),
                  1129.0 / 2100.0, 1e-9});
  rows.push_back({"conjecture", sep_probability(catalog("conjecture")), 29.0 / 64.0, 1e-9});
  rows.push_back({"previous_conjecture", sep_probability(catalog("previous_conjecture")),
                  8.0 / 17.0, 1e-9});
  rows.push_back({"paired_dominant", sep_probability(catalog("paired_dominant")), 0.585542, 1e-6});
  rows.push_back({"paired_greater", sep_probability(catalog("paired_greater")),
                  7724.0 / 525.0 - 5751.0 * kPi2v / 4096.0, 1e-9});
  {
    const auto s3 = catalog("s3x3");
    rows.push_back({"product_3x3_pair", sep_probability(product(s3, reflect(s3))), 0.576219, 1e-6});
  }
  rows.push_back({"product_paired_pair",
                  sep_probability(product(catalog("paired_intermediate"), catalog("paired_greater"))),
                  kPi2v * (18031791.0 * kPi2v - 177044420.0) / (16384.0 * 25.0 * 49.0), 1e-6});
  rows.push_back({"paired_dominant_squared",
                  sep_probability(power(catalog("paired_dominant"), 2)), 0.367762, 1e-6});
  rows.push_back({"scenario_complex_pair",
                  integrate_line(
                      [sc = catalog("scenario_complex_pair")](double x) {
                        return sc(x) * dirichlet_xi_marginal({3, 3, 2, 2}, x);
                      },
                      1e-10)
                      .value,
                  17.0 / 35.0, 1e-8});
  rows.push_back({"power_conjecture_beta2",
                  power_class_probability(catalog("conjecture"), BetaParameter(2)),
                  30660525.0 * pi4 / 11811160064.0, 1e-8});
  rows.push_back({"power_conjecture_beta4",
                  power_class_probability(catalog("conjecture"), BetaParameter(4)),
                  4893927891755175.0 * pi8 / 535315866107766636544.0, 1e-6});
  rows.push_back({"power_intermediate_beta2",
                  power_class_probability(catalog("intermediate"), BetaParameter(2)),
                  752517.0 * pi4 / 149946368.0, 1e-8});
  rows.push_back({"power_intermediate_beta4",
                  power_class_probability(catalog("intermediate"), BetaParameter(4)),
                  14092854769917.0 * pi8 / 408413594137395200.0, 1e-6});
  rows.push_back({"boundary_dominant", boundary_halve(sep_probability(catalog("dominant"))),
                  512.0 / (135.0 * kPi2v), 1e-9});
  rows.push_back({"boundary_intermediate", boundary_halve(sep_probability(catalog("intermediate"))),
                  11.0 / 35.0, 1e-9});
  rows.push_back({"boundary_conjecture", boundary_halve(sep_probability(catalog("conjecture"))),
                  29.0 / 128.0, 1e-9});

  bool all = true;
  std::vector<ResultRow> out;
  std::printf("%-28s %-22s %-22s %-10s %s\n", "quantity", "computed", "target", "|delta|", "status");
  for (const auto& r : rows) {
    const double d = std::fabs(r.computed - r.target);
    const bool ok = d <= r.tol;
    all = all && ok;
    std::printf("%-28s %-22.15g %-22.15g %-10.2e %s\n", r.name.c_str(), r.computed, r.target, d,
                ok ? "pass" : "FAIL");
    ResultRow rr;
    rr.name = r.name;
    rr.value = r.computed;
    rr.std_error = d;
    rr.seed = cfg.seed;
    rr.provenance = Provenance::kQuadrature;
    out.push_back(rr);
  }
  write_artifact(cfg, out);
  return all ? 0 : 1;
}

int run_curves(RunConfig cfg, const GridSpec& grid) {
  DesfCurve c = catalog(cfg.curve);
  std::vector<ResultRow> rows;
  for (double xi = grid.lo; xi <= grid.hi + 1e-12; xi += grid.step) {
    ResultRow r;
    r.name = cfg.curve;
    r.xi = xi;
    r.value = c(xi);
    r.seed = cfg.seed;
    r.provenance = Provenance::kClosedForm;
    rows.push_back(r);
  }
  if (cfg.out_path.empty()) cfg.out_path = default_out_dir() + "/curve_" + cfg.curve + "." + cfg.format;
  write_artifact(cfg, rows);
  std::cout << "wrote " << rows.size() << " rows to " << cfg.out_path << "\n";
  return 0;
}

int run_desf(RunConfig cfg, const GridSpec& grid) {
  QmcOptions opts;
  opts.seed = cfg.seed;
  opts.threads = cfg.threads;
  const auto test = SepTestSpec::parse(cfg.test);
  const auto table = estimate_desf(test, to_xi_grid(grid), cfg.n, opts);
  if (cfg.out_path.empty())
    cfg.out_path = default_out_dir() + "/desf_" + test.name() + "." + cfg.format;
  write_artifact(cfg, rows_from_desf_table("desf_" + test.name(), table, cfg.seed));
  int flagged = 0;
  for (const auto& c : table.cells) flagged += c.flagged;
  std::cout << "desf table: " << table.cells.size() << " cells, accepted "
            << (table.cells.empty() ? 0 : table.cells.front().n_accepted) << " of " << cfg.n
            << (flagged ? (", " + std::to_string(flagged) + " flagged") : "") << ", wrote "
            << cfg.out_path << "\n";
  return 0;
}

int run_estimate(RunConfig cfg) {
  QmcOptions opts;
  opts.seed = cfg.seed;
  opts.threads = cfg.threads;
  std::vector<ResultRow> rows;
  std::string label;
  if (cfg.test == "absolute") {
    const auto r = estimate_absolute(cfg.n, opts);
    label = "absolute";
    rows.push_back(row_from_estimate(label, r.estimate, cfg.seed));
    std::cout << "absolute separability: " << r.estimate.mean << " +- " << r.estimate.std_error
              << "  CI4 [" << r.estimate.ci_low << ", " << r.estimate.ci_high << "]  (valid "
              << r.n_valid << ", implication violations " << r.implication_violations << ")\n";
  } else {
    SepProbResult r;
    if (cfg.test == "scenario") {
      r = estimate_scenario(cfg.n, opts);
      label = "scenario";
    } else {
      const auto test = SepTestSpec::parse(cfg.test);
      r = estimate_sep_prob(test, BetaParameter(static_cast<int>(cfg.beta)), cfg.n, opts);
      label = test.name() + "_beta" + std::to_string(static_cast<int>(cfg.beta));
    }
    rows.push_back(row_from_estimate(label, r.estimate, cfg.seed));
    const auto binned = rows_from_desf_table(label + "_binned", r.binned, cfg.seed);
    rows.insert(rows.end(), binned.begin(), binned.end());
    std::cout << label << ": " << r.estimate.mean << " +- " << r.estimate.std_error << "  CI4 ["
              << r.estimate.ci_low << ", " << r.estimate.ci_high << "]  (valid " << r.n_valid
              << " of " << r.n_requested << ", acceptance " << r.acceptance_rate << ")\n";
  }
  if (cfg.out_path.empty())
    cfg.out_path = default_out_dir() + "/estimate_" + label + "." + cfg.format;
  write_artifact(cfg, rows);
  std::cout << "wrote " << cfg.out_path << "\n";
  return 0;
}

int run_cube(RunConfig cfg, const GridSpec& grid, bool use_grid, double xi_single) {
  std::vector<double> xis;
  if (use_grid)
    for (double x = grid.lo; x <= grid.hi + 1e-12; x += grid.step) xis.push_back(x);
  else
    xis.push_back(xi_single);

  std::vector<ResultRow> rows;
  for (double xi : xis) {
    double v = 0.0;
    if (cfg.scheme.rfind("single:", 0) == 0) {
      v = cube_single(std::stoi(cfg.scheme.substr(7)), xi);
    } else if (cfg.scheme.rfind("pair:", 0) == 0) {
      const auto comma = cfg.scheme.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("cube: pair scheme expects pair:a,b");
      v = cube_paired(std::stoi(cfg.scheme.substr(5, comma - 5)),
                      std::stoi(cfg.scheme.substr(comma + 1)), xi);
    } else if (cfg.scheme == "triple") {
      v = cube_triple(xi);
    } else {
      throw std::invalid_argument("cube: unknown scheme '" + cfg.scheme + "'");
    }
    ResultRow r;
    r.name = "cube_" + cfg.scheme;
    r.xi = xi;
    r.value = v;
    r.seed = cfg.seed;
    r.provenance = Provenance::kQuadrature;
    rows.push_back(r);
    std::cout << "cube " << cfg.scheme << " xi=" << xi << " -> " << format_double(v) << "\n";
  }
  if (!cfg.out_path.empty()) write_artifact(cfg, rows);
  return 0;
}

int run_jacobian(RunConfig cfg, const GridSpec& grid) {
  std::vector<ResultRow> rows;
  double max_rel = 0.0;
  for (double xi = grid.lo; xi <= grid.hi + 1e-12; xi += grid.step) {
    const double jn = jacobian_numeric(BetaParameter(static_cast<int>(cfg.beta)), xi);
    ResultRow r;
    r.name = "jacobian_beta" + std::to_string(static_cast<int>(cfg.beta));
    r.xi = xi;
    r.value = jn;
    r.seed = cfg.seed;
    r.provenance = Provenance::kQuadrature;
    rows.push_back(r);
    if (cfg.beta == 1) {
      const double jc = jacobian_closed(xi);
      max_rel = std::max(max_rel, std::fabs(jn - jc) / jc);
      ResultRow rc = r;
      rc.name = "jacobian_closed";
      rc.value = jc;
      rc.provenance = Provenance::kClosedForm;
      rows.push_back(rc);
    }
  }
  if (cfg.beta == 1) std::cout << "max relative deviation numeric vs closed: " << max_rel << "\n";
  if (cfg.out_path.empty()) cfg.out_path = default_out_dir() + "/jacobian." + cfg.format;
  write_artifact(cfg, rows);
  std::cout << "wrote " << cfg.out_path << "\n";
  return cfg.beta == 1 && max_rel > 1e-6 ? 1 : 0;
}

int run_report(RunConfig cfg, const std::vector<std::string>& inputs) {
  if (inputs.empty()) throw std::invalid_argument("report: no input artifacts");
  struct Item {
    std::string name;
    double value;
    std::string provenance;
  };
  std::vector<Item> items;
  for (const auto& path : inputs) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("report: cannot read artifact " + path);
    nlohmann::json j;
    try {
      f >> j;
    } catch (const std::exception& e) {
      throw std::runtime_error("report: corrupt artifact " + path + ": " + e.what());
    }
    for (const auto& r : j.at("rows"))
      if (r.contains("xi") && r.at("xi").get<double>() == 0.0)
        items.push_back({r.at("name").get<std::string>(), r.at("value").get<double>(),
                         r.at("provenance").get<std::string>()});
  }
  if (items.empty()) throw std::runtime_error("report: artifacts contained no usable rows");

  auto find_value = [&](const std::string& key, double& out) {
    for (const auto& it : items)
      if (it.name == key) {
        out = it.value;
        return true;
      }
    return false;
  };
  double lower = 0.0, estimate = 0.0;
  const bool have_lower = find_value("absolute", lower);
  const bool have_est = find_value("full-ph_beta1", estimate);

  struct Bound {
    std::string name;
    double value;
  };
  std::vector<Bound> uppers;
  for (const auto& it : items)
    if (it.provenance == "quadrature" &&
        (it.name == "paired_intermediate" || it.name == "intermediate" || it.name == "dominant" ||
         it.name == "paired_dominant"))
      uppers.push_back({it.name, it.value});
  std::sort(uppers.begin(), uppers.end(), [](const Bound& a, const Bound& b) { return a.value < b.value; });

  bool ordered = true;
  std::vector<ResultRow> rows;
  auto add = [&](const std::string& name, double v, Provenance p) {
    ResultRow r;
    r.name = name;
    r.value = v;
    r.std_error = boundary_halve(std::min(std::max(v, 0.0), 1.0));  // boundary column
    r.seed = cfg.seed;
    r.provenance = p;
    rows.push_back(r);
  };
  std::cout << "ranked bound table (value | boundary-state value):\n";
  if (have_lower) {
    add("lower_absolute", lower, Provenance::kQmcEstimate);
    std::cout << "  lower  " << lower << " | " << lower / 2 << "\n";
  }
  if (have_est) {
    add("best_estimate", estimate, Provenance::kQmcEstimate);
    std::cout << "  est    " << estimate << " | " << estimate / 2 << "\n";
    if (have_lower && estimate < lower) ordered = false;
  }
  double prev = have_est ? estimate : 0.0;
  for (const auto& b : uppers) {
    add("upper_" + b.name, b.value, Provenance::kQuadrature);
    std::cout << "  upper  " << b.value << " | " << b.value / 2 << "  (" << b.name << ")\n";
    if (b.value < prev) ordered = false;
    prev = b.value;
  }
  if (!ordered) std::cout << "WARNING: ordering violation in merged bounds\n";
  if (cfg.out_path.empty()) cfg.out_path = default_out_dir() + "/report." + cfg.format;
  write_artifact(cfg, rows);
  std::cout << "wrote " << cfg.out_path << "\n";
  return ordered ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hilbert-Schmidt two-qubit separability probability toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  double n_samples = 0;  // accepts scientific notation, e.g. --n 1e7
  std::string grid_str;
  double xi = 0.0;
  std::vector<std::string> report_inputs;

  auto add_common = [&](CLI::App* c) {
    c->add_option("--out", cfg.out_path, "output artifact path");
    c->add_option("--format", cfg.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    c->add_option("--seed", cfg.seed, "QMC scramble seed");
    c->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
  };

  auto* bounds = app.add_subcommand("bounds", "closed-form quadrature targets");
  add_common(bounds);

  auto* curves = app.add_subcommand("curves", "export a catalog curve");
  curves->add_option("--name", cfg.curve, "catalog curve name")->required();
  curves->add_option("--grid", grid_str, "lo:hi:step (default -4:4:0.1)");
  add_common(curves);

  auto* desf = app.add_subcommand("desf", "empirical DESF table");
  desf->add_option("--test", cfg.test, "full-ph|2x2|3x3:k|pair:a,b")->required();
  desf->add_option("--n", n_samples, "sample count (accepts 1e7)")->required();
  desf->add_option("--grid", grid_str, "lo:hi:step");
  add_common(desf);

  auto* estimate = app.add_subcommand("estimate", "separability probability estimation");
  estimate->add_option("--test", cfg.test, "full-ph|2x2|3x3:k|pair:a,b|absolute|scenario")
      ->required();
  estimate->add_option("--beta", cfg.beta, "1 or 2 (full-ph only)");
  estimate->add_option("--n", n_samples, "sample count (accepts 1e7)")->required();
  add_common(estimate);

  auto* cube = app.add_subcommand("cube", "cube-scheme quadrature");
  cube->add_option("--scheme", cfg.scheme, "single:k|pair:a,b|triple")->required();
  auto* xi_opt = cube->add_option("--xi", xi, "evaluation point");
  cube->add_option("--grid", grid_str, "lo:hi:step (overrides --xi)");
  add_common(cube);

  auto* jacobian = app.add_subcommand("jacobian", "numeric vs closed jacobian");
  jacobian->add_option("--beta", cfg.beta, "1, 2 or 4");
  jacobian->add_option("--grid", grid_str, "lo:hi:step");
  add_common(jacobian);

  auto* report = app.add_subcommand("report", "merge artifacts into the ranked bound table");
  report->add_option("--in", report_inputs, "input JSON artifacts")->required();
  add_common(report);

  auto* selfcheck = app.add_subcommand("selfcheck", "full acceptance suite");
  bool quick = false;
  selfcheck->add_flag("--quick", quick, "reduced sample counts (smoke run)");
  double n_self = 0;
  selfcheck->add_option("--n", n_self, "headline QMC sample count (accepts 1e7)");
  add_common(selfcheck);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    cfg.command = app.get_subcommands().front()->get_name();
    if (n_samples > 0) cfg.n = static_cast<std::int64_t>(std::llround(n_samples));
    if (bounds->parsed()) return run_bounds(cfg);
    if (curves->parsed()) return run_curves(cfg, parse_grid(grid_str));
    if (desf->parsed()) {
      GridSpec g = parse_grid(grid_str);
      cfg.grid_lo = g.lo;
      cfg.grid_hi = g.hi;
      cfg.grid_points = to_xi_grid(g).points;
      return run_desf(cfg, g);
    }
    if (estimate->parsed()) return run_estimate(cfg);
    if (cube->parsed()) {
      (void)xi_opt;
      return run_cube(cfg, parse_grid(grid_str), !grid_str.empty(), xi);
    }
    if (jacobian->parsed()) {
      GridSpec g = grid_str.empty() ? GridSpec{-4.0, 4.0, 0.4} : parse_grid(grid_str);
      return run_jacobian(cfg, g);
    }
    if (report->parsed()) return run_report(cfg, report_inputs);
    if (selfcheck->parsed()) {
      SelfCheckOptions opts;
      opts.seed = cfg.seed;
      opts.threads = cfg.threads;
      if (quick) {
        opts.n_large = 400'000;
        opts.n_desf = 200'000;
        opts.n_consistency = 400'000;
      } else if (n_self > 0) {
        const auto n_large = static_cast<std::int64_t>(std::llround(n_self));
        opts.n_large = n_large;
        opts.n_desf = std::max<std::int64_t>(n_large / 10, 100'000);
        opts.n_consistency = std::max<std::int64_t>(n_large / 2, 200'000);
      }
      const auto rep = run_acceptance_suite(std::cout, opts);
      return rep.all_pass ? 0 : 1;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
