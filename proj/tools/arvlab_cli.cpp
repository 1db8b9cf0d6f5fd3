#include <exception>
#include <iostream>
#include <stdexcept>

#include "CLI11.hpp"

#include "arvlab/report.hpp"
#include "arvlab/types.hpp"

int main(int argc, char** argv) {
  arvlab::RunConfig cfg;
  CLI::App app{"grid-level simulations of unit compression semigroups"};
  app.add_option("--cells-per-unit", cfg.cells_per_unit, "grid cells per time unit")
      ->capture_default_str();
  app.add_option("--cutoff", cfg.cutoff, "total occupation cutoff")->capture_default_str();
  app.add_option("--unit-re", cfg.unit_re, "real part of the unit density")
      ->capture_default_str();
  app.add_option("--unit-im", cfg.unit_im, "imaginary part of the unit density")
      ->capture_default_str();
  app.add_option("--window", cfg.window_units, "dilation window in time units")
      ->capture_default_str();
  app.add_option("--onb-index", cfg.onb_index, "fiberwise basis index, 1-based")
      ->capture_default_str();
  app.add_option("--experiment", cfg.experiment,
                 "one of theorem, observation, semigroup, intertwine, sweep, all")
      ->capture_default_str();
  app.add_option("--out", cfg.out_dir, "directory for JSON summaries and the sweep CSV");
  app.add_option("--seed", cfg.seed, "seed for all sampled checks")->capture_default_str();
  app.add_option("--sweep-cells", cfg.sweep_cells, "grid sizes visited by the sweep")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  }

  try {
    const arvlab::RunOutput out = arvlab::run_configured(cfg, std::cout);
    if (!arvlab::write_outputs(cfg, out, std::cerr)) {
      return 4;
    }
    return out.pass ? 0 : 1;
  } catch (const arvlab::TruncationOverflow& e) {
    std::cerr << "truncation overflow: " << e.what() << "\n"
              << "increase --window so shifted vectors keep at least one unit of slack "
                 "beyond the largest time shift\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
