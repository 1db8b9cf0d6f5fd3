#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "arvlab/report.hpp"

using namespace arvlab;

namespace {

// Strip the trailing runtime column from every CSV row.
std::vector<std::string> rows_without_runtime(const std::string& csv) {
  std::vector<std::string> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t cut = line.rfind(", ");
    rows.push_back(cut == std::string::npos ? line : line.substr(0, cut));
  }
  return rows;
}

}  // namespace

TEST_CASE("configuration validation names the offending flag") {
  RunConfig cfg;
  CHECK_NOTHROW(cfg.validate());

  RunConfig bad = cfg;
  bad.experiment = "spectra";
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.onb_index = 4;  // cutoff 2 admits indices 1..3
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.window_units = 1;  // theorem needs one unit of slack beyond the shift
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.experiment = "intertwine";
  bad.window_units = 2;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.experiment = "semigroup";
  bad.cutoff = 3;  // two-step blocks at m = 8, cutoff 3 are out of budget
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = cfg;
  bad.experiment = "sweep";
  bad.sweep_cells = {};
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("bound check semantics") {
  BoundCheck two_sided{"", 1.0, 1.0, 0.1, false, false};
  CHECK(two_sided.pass());
  two_sided.value = 1.2;
  CHECK_FALSE(two_sided.pass());

  BoundCheck upper{"", 0.5, 1.0, 0.0, true, false};
  CHECK(upper.pass());
  upper.value = 1.1;
  CHECK_FALSE(upper.pass());

  BoundCheck lower{"", -1e-12, 0.0, 1e-9, false, true};
  CHECK(lower.pass());
  lower.value = -1e-6;
  CHECK_FALSE(lower.pass());

  BoundCheck info{"", 42.0, std::nan(""), 0.0, false, false};
  CHECK(info.pass());
}

TEST_CASE("double formatting") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0) == "1");
  CHECK(format_double(std::nan("")) == "nan");
  CHECK(format_double(0.602294921875) == "0.602294921875");
}

TEST_CASE("sweep CSV shape and determinism") {
  RunConfig cfg;
  cfg.experiment = "sweep";
  cfg.sweep_cells = {2, 4};
  cfg.seed = 99;

  std::ostringstream sink1, sink2;
  std::string csv1, csv2;
  const ExperimentResult r1 = run_sweep(cfg, sink1, &csv1);
  const ExperimentResult r2 = run_sweep(cfg, sink2, &csv2);
  CHECK(r1.pass);
  CHECK(r2.pass);

  const std::vector<std::string> rows1 = rows_without_runtime(csv1);
  const std::vector<std::string> rows2 = rows_without_runtime(csv2);
  REQUIRE(rows1.size() == 3);  // header plus one row per grid size
  CHECK(rows1 == rows2);

  std::istringstream in(csv1);
  std::string header;
  std::getline(in, header);
  CHECK(header == sweep_csv_header());
  CHECK(header ==
        "m_unit, cutoff, c_re, c_im, k, M2_grid, M2_closed_form, T1a_norm, isometry_defect, "
        "semigroup_defect, runtime_ms");
  CHECK(rows1[1].substr(0, 2) == "2,");
  CHECK(rows1[2].substr(0, 2) == "4,");
}

TEST_CASE("experiment JSON carries the bound list") {
  ExperimentResult r;
  r.experiment = "theorem";
  r.pass = true;
  r.bounds.push_back({"sample bound", 0.25, 0.0, 0.5, true, false});
  r.bounds.push_back({"informational", 1.5, std::nan(""), 0.0, false, false});
  const std::string text = experiment_json(r);
  const nlohmann::json j = nlohmann::json::parse(text);
  CHECK(j["experiment"] == "theorem");
  CHECK(j["pass"] == true);
  REQUIRE(j["bounds"].size() == 2);
  CHECK(j["bounds"][0]["name"] == "sample bound");
  CHECK(j["bounds"][0]["value"] == 0.25);
  CHECK(j["bounds"][1]["expected"].is_null());  // NaN serializes as null
}

TEST_CASE("theorem experiment passes at a small vacuum configuration") {
  RunConfig cfg;
  cfg.cells_per_unit = 4;
  std::ostringstream sink;
  const ExperimentResult r = run_theorem(cfg, sink);
  CHECK(r.pass);
  CHECK(sink.str().find("[PASS]") != std::string::npos);
  CHECK(sink.str().find("[FAIL]") == std::string::npos);
}
