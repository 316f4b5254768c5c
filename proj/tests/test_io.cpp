#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sepprob/io.hpp"

using namespace sepprob;

TEST_CASE("config hash is stable and sensitive") {
  RunConfig a;
  a.command = "estimate";
  a.test = "full-ph";
  a.n = 1000;
  a.seed = 42;
  RunConfig b = a;
  CHECK(a.config_hash() == b.config_hash());
  b.seed = 43;
  CHECK(a.config_hash() != b.config_hash());
  CHECK(a.config_hash().size() == 16);
}

TEST_CASE("csv columns and float round trip") {
  RunConfig cfg;
  cfg.command = "curves";
  cfg.curve = "dominant";
  ResultRow r;
  r.name = "dominant";
  r.xi = 0.1;
  r.value = 1.0 / 3.0;
  r.std_error = 0.0;
  r.n = 5;
  r.seed = 42;
  r.provenance = Provenance::kClosedForm;
  const std::string csv = rows_to_csv(cfg, {r});
  CHECK(csv.find("name,xi,value,std_error,n,seed,provenance") != std::string::npos);
  CHECK(csv.find("closed-form") != std::string::npos);

  // 17 significant digits round-trip bit-exactly
  const std::string s = format_double(1.0 / 3.0);
  double parsed = 0;
  std::sscanf(s.c_str(), "%lf", &parsed);
  CHECK(parsed == 1.0 / 3.0);
}

TEST_CASE("identical config writes byte-identical artifacts") {
  const auto dir = std::filesystem::temp_directory_path() / "sepprob_io_test";
  std::filesystem::create_directories(dir);
  RunConfig cfg;
  cfg.command = "curves";
  cfg.curve = "dominant";
  cfg.format = "json";
  std::vector<ResultRow> rows;
  for (int i = 0; i < 4; ++i) {
    ResultRow r;
    r.name = "dominant";
    r.xi = -0.2 + 0.1 * i;
    r.value = 0.5 * i;
    r.seed = cfg.seed;
    rows.push_back(r);
  }
  cfg.out_path = (dir / "a.json").string();
  write_artifact(cfg, rows);
  cfg.out_path = (dir / "b.json").string();
  write_artifact(cfg, rows);
  std::ifstream fa(dir / "a.json"), fb(dir / "b.json");
  std::stringstream sa, sb;
  sa << fa.rdbuf();
  sb << fb.rdbuf();
  CHECK(sa.str() == sb.str());
  CHECK(sa.str().find("config_hash") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("estimate and table rows") {
  Estimate e = Estimate::from_counts(300, 1000);
  const auto row = row_from_estimate("p", e, 7);
  CHECK(row.value == doctest::Approx(0.3));
  CHECK(row.n == 1000);
  CHECK(to_string(row.provenance) == "qmc-estimate");

  DesfTable t;
  t.cells.push_back({0.0, 0.5, 0.01, 50, true});
  const auto rows = rows_from_desf_table("desf", t, 7);
  CHECK(rows.size() == 1);
  CHECK(rows[0].name == "desf[flagged]");
}
