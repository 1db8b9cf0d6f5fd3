#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "arvlab/types.hpp"

namespace arvlab {

// Configuration shared by the CLI and the experiment drivers.  Validation
// throws std::invalid_argument with a message naming the offending flag;
// the CLI maps that to its config exit code.
struct RunConfig {
  int cells_per_unit = 8;
  int cutoff = 2;
  double unit_re = 0.0;
  double unit_im = 0.0;
  int window_units = 3;
  int onb_index = 2;
  std::string experiment = "theorem";
  std::string out_dir;
  std::uint64_t seed = 2026;
  std::vector<int> sweep_cells = {8, 16, 32, 64};

  cplx unit() const { return cplx(unit_re, unit_im); }
  GridSpec grid() const { return GridSpec{cells_per_unit, cutoff}; }
  void validate() const;
};

// One checked quantity.  `upper` selects value <= expected + tol, `lower`
// selects value >= expected - tol; otherwise |value - expected| <= tol.  A
// NaN expected value marks an informational entry that cannot fail.
struct BoundCheck {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tol = 0.0;
  bool upper = false;
  bool lower = false;

  bool pass() const;
};

struct ExperimentResult {
  std::string experiment;
  bool pass = true;
  std::vector<BoundCheck> bounds;
  double runtime_ms = 0.0;
};

struct RunOutput {
  std::vector<ExperimentResult> results;
  std::string sweep_csv;  // filled only when the sweep ran
  bool pass = true;
};

// Individual experiment drivers.  Each prints one PASS/FAIL line per bound
// (and a closing summary line) to `out` and never writes files.
ExperimentResult run_theorem(const RunConfig& cfg, std::ostream& out);
ExperimentResult run_observation(const RunConfig& cfg, std::ostream& out);
ExperimentResult run_semigroup(const RunConfig& cfg, std::ostream& out);
ExperimentResult run_intertwine(const RunConfig& cfg, std::ostream& out);
ExperimentResult run_sweep(const RunConfig& cfg, std::ostream& out, std::string* csv);

// Dispatches on cfg.experiment ("all" runs every driver in order).
RunOutput run_configured(const RunConfig& cfg, std::ostream& out);

// Serialization.  The CSV uses %.12g for all numeric fields, so rows are
// byte-identical across runs with the same configuration and seed except
// for the runtime column.  JSON follows {experiment, pass, bounds:[...]}.
std::string format_double(double v);
const std::string& sweep_csv_header();
std::string experiment_json(const ExperimentResult& r);

// Writes <experiment>.json per result (plus summary.json and sweep.csv when
// applicable) under cfg.out_dir.  Returns false on I/O failure.  No-op with
// empty out_dir.
bool write_outputs(const RunConfig& cfg, const RunOutput& out, std::ostream& log);

}  // namespace arvlab
