#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sepprob/qmc.hpp"

namespace sepprob {

enum class Provenance { kClosedForm, kQuadrature, kQmcEstimate };
std::string to_string(Provenance p);

// Everything a run needs; serialized verbatim into every output artifact.
struct RunConfig {
  std::string command;
  std::string test;
  std::string curve;
  std::string scheme;
  std::int64_t n = 0;
  std::uint64_t seed = 12345;
  int threads = 0;
  double grid_lo = -4.0;
  double grid_hi = 4.0;
  int grid_points = 81;
  double tol = 1e-9;
  double beta = 1.0;
  std::string out_path;
  std::string format = "csv";  // csv | json

  std::string canonical() const;   // stable key=value serialization
  std::string config_hash() const; // FNV-1a 64 hex of canonical()
};

// One output row; the fixed CSV column set is
// name,xi,value,std_error,n,seed (17 significant digits for floats).
struct ResultRow {
  std::string name;
  double xi = 0.0;
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  Provenance provenance = Provenance::kClosedForm;
};

std::string format_double(double v);  // %.17g

std::string rows_to_csv(const RunConfig& cfg, const std::vector<ResultRow>& rows);
std::string rows_to_json(const RunConfig& cfg, const std::vector<ResultRow>& rows);

// Writes csv or json per cfg.format; creates parent directories.
void write_artifact(const RunConfig& cfg, const std::vector<ResultRow>& rows);

std::vector<ResultRow> rows_from_desf_table(const std::string& name, const DesfTable& t,
                                            std::uint64_t seed);
ResultRow row_from_estimate(const std::string& name, const Estimate& e, std::uint64_t seed);

// Default output directory: $SEPPROB_OUTDIR or "." when unset.
std::string default_out_dir();

}  // namespace sepprob
