#include "sepprob/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace sepprob {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kClosedForm: return "closed-form";
    case Provenance::kQuadrature: return "quadrature";
    case Provenance::kQmcEstimate: return "qmc-estimate";
  }
  return "?";
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << "command=" << command << ";test=" << test << ";curve=" << curve << ";scheme=" << scheme
     << ";n=" << n << ";seed=" << seed << ";threads=" << threads << ";grid=" << format_double(grid_lo)
     << ":" << format_double(grid_hi) << ":" << grid_points << ";tol=" << format_double(tol)
     << ";beta=" << format_double(beta) << ";format=" << format;
  return os.str();
}

std::string RunConfig::config_hash() const {
  const std::string s = canonical();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string rows_to_csv(const RunConfig& cfg, const std::vector<ResultRow>& rows) {
  std::ostringstream os;
  os << "# config " << cfg.canonical() << "\n";
  os << "# config_hash " << cfg.config_hash() << "\n";
  os << "name,xi,value,std_error,n,seed,provenance\n";
  for (const ResultRow& r : rows) {
    os << r.name << ',' << format_double(r.xi) << ',' << format_double(r.value) << ','
       << format_double(r.std_error) << ',' << r.n << ',' << r.seed << ',' << to_string(r.provenance)
       << "\n";
  }
  return os.str();
}

std::string rows_to_json(const RunConfig& cfg, const std::vector<ResultRow>& rows) {
  nlohmann::json j;
  j["config"] = {{"command", cfg.command}, {"test", cfg.test},   {"curve", cfg.curve},
                 {"scheme", cfg.scheme},   {"n", cfg.n},         {"seed", cfg.seed},
                 {"threads", cfg.threads}, {"tol", cfg.tol},     {"beta", cfg.beta},
                 {"grid_lo", cfg.grid_lo}, {"grid_hi", cfg.grid_hi},
                 {"grid_points", cfg.grid_points}, {"format", cfg.format}};
  j["config_hash"] = cfg.config_hash();
  nlohmann::json arr = nlohmann::json::array();
  for (const ResultRow& r : rows) {
    arr.push_back({{"name", r.name},
                   {"xi", r.xi},
                   {"value", r.value},
                   {"std_error", r.std_error},
                   {"n", r.n},
                   {"seed", r.seed},
                   {"provenance", to_string(r.provenance)}});
  }
  j["rows"] = arr;
  return j.dump(2) + "\n";
}

void write_artifact(const RunConfig& cfg, const std::vector<ResultRow>& rows) {
  if (cfg.out_path.empty()) return;
  const std::filesystem::path p(cfg.out_path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("write_artifact: cannot open " + cfg.out_path);
  f << (cfg.format == "json" ? rows_to_json(cfg, rows) : rows_to_csv(cfg, rows));
}

std::vector<ResultRow> rows_from_desf_table(const std::string& name, const DesfTable& t,
                                            std::uint64_t seed) {
  std::vector<ResultRow> rows;
  rows.reserve(t.cells.size());
  for (const DesfCell& c : t.cells) {
    ResultRow r;
    r.name = c.flagged ? name + "[flagged]" : name;
    r.xi = c.xi;
    r.value = c.s_hat;
    r.std_error = c.std_error;
    r.n = c.n_accepted;
    r.seed = seed;
    r.provenance = Provenance::kQmcEstimate;
    rows.push_back(r);
  }
  return rows;
}

ResultRow row_from_estimate(const std::string& name, const Estimate& e, std::uint64_t seed) {
  ResultRow r;
  r.name = name;
  r.value = e.mean;
  r.std_error = e.std_error;
  r.n = e.n_samples;
  r.seed = seed;
  r.provenance = Provenance::kQmcEstimate;
  return r;
}

std::string default_out_dir() {
  const char* env = std::getenv("SEPPROB_OUTDIR");
  return env && *env ? env : ".";
}

}  // namespace sepprob
