#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace sepprob {

struct CriterionResult {
  std::string id;
  std::string name;
  double computed = 0.0;
  double target = 0.0;
  double tol = 0.0;
  bool pass = false;
  std::string note;
};

struct SelfCheckOptions {
  std::int64_t n_large = 10'000'000;       // headline QMC runs
  std::int64_t n_desf = 1'000'000;         // DESF tables
  std::int64_t n_consistency = 4'000'000;  // fine-grid consistency table
  std::uint64_t seed = 12345;
  int threads = 0;
};

struct SelfCheckReport {
  std::vector<CriterionResult> results;
  bool all_pass = true;
};

// Runs every acceptance criterion at its pinned tolerance, printing one
// pass/fail line per criterion to `log`.
SelfCheckReport run_acceptance_suite(std::ostream& log, const SelfCheckOptions& opts = {});

}  // namespace sepprob
