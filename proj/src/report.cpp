#include "arvlab/report.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <stdexcept>

#include "json.hpp"

#include "arvlab/dilation.hpp"
#include "arvlab/direct_integral.hpp"
#include "arvlab/linalg.hpp"
#include "arvlab/markov.hpp"
#include "arvlab/occupation_basis.hpp"
#include "arvlab/oracles.hpp"
#include "arvlab/product_system.hpp"

namespace arvlab {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    const auto now = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(now - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

void print_bound(std::ostream& out, const std::string& exp, const BoundCheck& b) {
  if (std::isnan(b.expected)) {
    out << "[INFO] " << exp << ": " << b.name << " = " << format_double(b.value) << "\n";
    return;
  }
  out << (b.pass() ? "[PASS] " : "[FAIL] ") << exp << ": " << b.name << " (value "
      << format_double(b.value);
  if (b.upper) {
    out << " <= " << format_double(b.expected + b.tol);
  } else if (b.lower) {
    out << " >= " << format_double(b.expected - b.tol);
  } else {
    out << ", expected " << format_double(b.expected) << " tol " << format_double(b.tol);
  }
  out << ")\n";
}

void finish(ExperimentResult& r, std::ostream& out, const Timer& timer) {
  r.runtime_ms = timer.ms();
  r.pass = true;
  for (const BoundCheck& b : r.bounds) {
    print_bound(out, r.experiment, b);
    r.pass = r.pass && b.pass();
  }
  out << (r.pass ? "[PASS] " : "[FAIL] ") << r.experiment << ": " << r.bounds.size()
      << " checks, " << format_double(r.runtime_ms) << " ms\n";
}

// Dense-block cost of the two-step semigroup comparison; kept small enough
// for interactive runs.
bool semigroup_feasible(const GridSpec& grid) {
  const OccupationBasis en2(2 * grid.cells_per_unit, grid.cutoff);
  std::size_t sum_d2 = 0;
  std::size_t dim_l = 0;
  for (int j = 0; j < grid.cells_per_unit; ++j) {
    const std::size_t d = OccupationBasis(j + 1, grid.cutoff).dim();
    sum_d2 += d * d;
    dim_l += d;
  }
  return dim_l <= 600 && en2.dim() * sum_d2 <= 16000000;
}

std::size_t composite_dim(const GridSpec& grid, int window_units) {
  const OccupationBasis wb(window_units * grid.cells_per_unit, grid.cutoff);
  std::size_t dim = 0;
  for (int j = 0; j < grid.cells_per_unit; ++j) {
    dim += OccupationBasis(j + 1, grid.cutoff).dim() * wb.dim();
  }
  return dim;
}

Eigen::MatrixXcd random_unit_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) {
      a(r, c) = cplx(gauss(rng), gauss(rng));
    }
  }
  Eigen::MatrixXcd b = 0.5 * (a + a.adjoint());
  const double nb = operator_norm(b);
  if (nb > 0.0) {
    b /= nb;
  }
  return b;
}

double semigroup_defect_value(const StinespringBlocks& g1, const StinespringBlocks& g2,
                              const SectionSpace& space, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::Index n = static_cast<Eigen::Index>(space.dim());
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    const Eigen::MatrixXcd b = random_unit_hermitian(n, rng);
    const Eigen::MatrixXcd two = compressed_apply(g2, space, b);
    const Eigen::MatrixXcd twice = compressed_apply(g1, space, compressed_apply(g1, space, b));
    worst = std::max(worst, operator_norm(two - twice));
  }
  return worst;
}

struct SweepRow {
  int m = 0;
  double m2_grid = 0.0;
  double m2_closed_form = kNan;
  double t1a_norm = 0.0;
  double isometry = 0.0;
  double semigroup = kNan;
  double runtime_ms = 0.0;
};

SweepRow sweep_row(const RunConfig& cfg, int m) {
  const Timer timer;
  SweepRow row;
  row.m = m;
  const GridSpec grid{m, cfg.cutoff};
  const cplx c = cfg.unit();
  const int k = cfg.onb_index;
  const FockVector omega1 = unit_vector(grid, c, m);
  row.m2_grid = mass_integral(grid, overlap_section(omega1, k));
  if (k == 1) {
    row.m2_closed_form = oracle::closed_form_overlap_mass(c, m, grid.cutoff);
  } else if (k == 2) {
    row.m2_closed_form = oracle::closed_form_overlap_mass_k2(c, m, grid.cutoff);
  }
  const WitnessContraction v(grid, omega1, k);
  if (v.range_dim() * v.domain_dim() <= 4000000) {
    const Eigen::MatrixXcd vm = v.dense();
    const double s = operator_norm(vm);
    row.t1a_norm = s * s;
  } else {
    const auto gram = [&v](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
      out = v.apply_gram(in);
    };
    row.t1a_norm =
        power_iteration(v.range_dim(), gram, cfg.seed ^ (0x9e3779b97f4a7c15ULL * m)).value;
  }
  row.isometry = stinespring_isometry_defect(grid, c, 1);
  if (m <= 8 && semigroup_feasible(grid)) {
    const StinespringBlocks g1 = stinespring_blocks(grid, c, 1);
    const StinespringBlocks g2 = stinespring_blocks(grid, c, 2);
    const SectionSpace space(grid);
    row.semigroup = semigroup_defect_value(g1, g2, space, 5, cfg.seed ^ (0xd1b54a32d192ed03ULL * m));
  }
  row.runtime_ms = timer.ms();
  return row;
}

}  // namespace

void RunConfig::validate() const {
  grid().validate();
  if (onb_index < 1 || onb_index > cutoff + 1) {
    throw std::invalid_argument("--onb-index must lie between 1 and cutoff + 1 so the "
                                "requested vector exists in every fiber");
  }
  if (window_units < 1) {
    throw std::invalid_argument("--window must be at least 1");
  }
  const bool known =
      experiment == "theorem" || experiment == "observation" || experiment == "semigroup" ||
      experiment == "intertwine" || experiment == "sweep" || experiment == "all";
  if (!known) {
    throw std::invalid_argument("--experiment must be one of theorem, observation, "
                                "semigroup, intertwine, sweep, all");
  }
  const bool wants_theorem = experiment == "theorem" || experiment == "all";
  const bool wants_intertwine = experiment == "intertwine" || experiment == "all";
  const bool wants_semigroup = experiment == "semigroup" || experiment == "all";
  const bool wants_sweep = experiment == "sweep" || experiment == "all";
  if (wants_theorem && window_units < 2) {
    throw std::invalid_argument("the theorem experiment shifts by 1 time unit; --window "
                                "must be at least 2 (one unit of slack beyond the largest "
                                "shift)");
  }
  if (wants_intertwine) {
    if (window_units < 3) {
      throw std::invalid_argument("the intertwine experiment composes shifts totalling 2 "
                                  "time units; --window must be at least 3");
    }
    if (composite_dim(grid(), window_units) > 120000) {
      throw std::invalid_argument("the intertwine experiment materializes composite vectors; "
                                  "reduce --cells-per-unit, --cutoff, or --window");
    }
  }
  if (wants_semigroup && !semigroup_feasible(grid())) {
    throw std::invalid_argument("the semigroup experiment materializes two-step blocks; "
                                "reduce --cells-per-unit or --cutoff");
  }
  if (wants_sweep) {
    if (sweep_cells.empty()) {
      throw std::invalid_argument("sweep requires at least one grid size");
    }
    for (int m : sweep_cells) {
      if (m < 1 || m > 1024) {
        throw std::invalid_argument("sweep grid sizes must lie between 1 and 1024");
      }
    }
  }
}

bool BoundCheck::pass() const {
  if (std::isnan(expected)) {
    return true;
  }
  if (std::isnan(value)) {
    return false;
  }
  if (upper) {
    return value <= expected + tol;
  }
  if (lower) {
    return value >= expected - tol;
  }
  return std::abs(value - expected) <= tol;
}

ExperimentResult run_theorem(const RunConfig& cfg, std::ostream& out) {
  const Timer timer;
  ExperimentResult r;
  r.experiment = "theorem";
  const GridSpec grid = cfg.grid();
  const cplx c = cfg.unit();
  const int k = cfg.onb_index;
  const std::size_t dim_l = SectionSpace(grid).dim();
  const bool coherent = c != cplx(0.0, 0.0);
  const int samples = (!coherent || dim_l <= 4000) ? 50 : 0;
  const TheoremReport rep = verify_theorem(grid, c, k, cfg.window_units, samples, cfg.seed);

  r.bounds.push_back({"basis section has unit weighted norm", rep.a_norm, 1.0, 1e-12,
                      false, false});
  if (k <= 2) {
    r.bounds.push_back({"overlap mass integral matches truncated series", rep.m2_grid,
                        rep.m2_closed_form, 1e-10, false, false});
  } else {
    r.bounds.push_back({"overlap mass integral", rep.m2_grid, kNan, 0.0, false, false});
  }
  r.bounds.push_back({"compression norm within overlap mass bound", rep.norm_excess, 0.0,
                      1e-6, true, false});
  r.bounds.push_back({"compression norm at most one", rep.t1a_norm, 1.0, 1e-10, true, false});
  if (rep.dagger_samples > 0) {
    r.bounds.push_back({"matrix elements agree across independent pipelines",
                        rep.dagger_deviation, 0.0, 1e-9, true, false});
    r.bounds.push_back({"top witness overlap within mass bound", rep.z1_excess, 0.0, 1e-9,
                        true, false});
  } else {
    r.bounds.push_back({"matrix-element sampling skipped at this size", 0.0, kNan, 0.0,
                        false, false});
  }
  r.bounds.push_back({"compressed operator is not a projection",
                      rep.not_projection ? 1.0 : 0.0, 1.0, 0.0, false, false});
  if (rep.used_power_iteration) {
    r.bounds.push_back({"norm estimated by power iteration (lower-biased)", rep.t1a_norm,
                        kNan, 0.0, false, false});
  }
  finish(r, out, timer);
  return r;
}

ExperimentResult run_observation(const RunConfig& cfg, std::ostream& out) {
  const Timer timer;
  ExperimentResult r;
  r.experiment = "observation";
  const GridSpec grid = cfg.grid();
  const cplx c_unit = cfg.unit();
  const cplx c_other = c_unit + cplx(1.0, 0.0);
  const ObservationReport rep = observation_crosscheck(grid, c_unit, c_other, 1);
  const double tail = oracle::stinespring_defect_bound(c_unit, 1, grid.cutoff);
  const bool vacuum = c_unit == cplx(0.0, 0.0);
  const double series_tol = vacuum ? 1e-8 : 4.0 * tail + 1e-8;
  // Filtering-tail floor for the same-unit element: the truncated value is
  // (1/S_N(x)) sum_d x^d/d! A_d^2 with A_d a quadrature average no smaller
  // than S_{N-d}(x)/S_N(x), so 1 minus the element is at most 1 - B(x,N).
  const double x = std::norm(c_unit);
  const double sx = oracle::truncated_exp(x, grid.cutoff);
  double floor_value = 0.0;
  double fact = 1.0;
  for (int d = 0; d <= grid.cutoff; ++d) {
    if (d > 0) fact *= d;
    const double amin = oracle::truncated_exp(x, grid.cutoff - d) / sx;
    floor_value += std::pow(x, d) / fact / sx * amin * amin;
  }

  r.bounds.push_back({"normalized product form matches split pipeline", rep.split_deviation,
                      0.0, 1e-8, true, false});
  r.bounds.push_back({"unnormalized product form deviation", rep.split_deviation_naive, kNan,
                      0.0, false, false});
  r.bounds.push_back({"unit section inner product matches truncated series",
                      rep.unit_inner_deviation, 0.0, 1e-8, true, false});
  r.bounds.push_back({"compressed matrix element matches quadrature series",
                      std::abs(rep.dagger_pipeline - rep.dagger_closed_form), 0.0, series_tol,
                      true, false});
  r.bounds.push_back({"same-unit compressed element at most one", rep.same_unit_value, 1.0,
                      1e-10, true, false});
  r.bounds.push_back({"same-unit compressed element near one", rep.same_unit_value, 1.0,
                      vacuum ? 1e-10 : (1.0 - floor_value) + 1e-9, false, true});
  r.bounds.push_back({"same-unit quadrature series value", rep.same_unit_closed_form, kNan,
                      0.0, false, false});
  finish(r, out, timer);
  return r;
}

ExperimentResult run_semigroup(const RunConfig& cfg, std::ostream& out) {
  const Timer timer;
  ExperimentResult r;
  r.experiment = "semigroup";
  const GridSpec grid = cfg.grid();
  const cplx c = cfg.unit();
  const bool vacuum = c == cplx(0.0, 0.0);
  const StinespringBlocks g1 = stinespring_blocks(grid, c, 1);
  const StinespringBlocks g2 = stinespring_blocks(grid, c, 2);
  const SectionSpace space(grid);

  const double defect1 = isometry_defect(g1);
  const double defect2 = isometry_defect(g2);
  r.bounds.push_back({"one-step isometry defect matches degree profile", defect1,
                      stinespring_isometry_defect(grid, c, 1), 1e-12, false, false});
  r.bounds.push_back({"two-step isometry defect matches degree profile", defect2,
                      stinespring_isometry_defect(grid, c, 2), 1e-12, false, false});
  r.bounds.push_back({"one-step isometry defect matches truncated series", defect1,
                      oracle::stinespring_defect_bound(c, 1, grid.cutoff), 1e-12, false, false});
  r.bounds.push_back({"two-step isometry defect matches truncated series", defect2,
                      oracle::stinespring_defect_bound(c, 2, grid.cutoff), 1e-12, false, false});
  if (vacuum) {
    r.bounds.push_back({"vacuum factor is an exact isometry", std::max(defect1, defect2),
                        0.0, 1e-10, true, false});
  }

  const Eigen::Index n = static_cast<Eigen::Index>(space.dim());
  const Eigen::MatrixXcd tid =
      compressed_apply(g1, space, Eigen::MatrixXcd::Identity(n, n));
  const double unit_defect = operator_norm(tid - Eigen::MatrixXcd::Identity(n, n));
  r.bounds.push_back({"unit image defect equals isometry defect", unit_defect, defect1, 1e-10,
                      false, false});

  const double semi = semigroup_defect_value(g1, g2, space, 20, cfg.seed);
  const double semi_tol =
      vacuum ? 1e-8
             : 2.0 * (oracle::stinespring_defect_bound(c, 1, grid.cutoff) +
                      oracle::stinespring_defect_bound(c, 2, grid.cutoff)) +
                   1e-8;
  r.bounds.push_back({"two-step map matches iterated one-step map", semi, 0.0, semi_tol, true,
                      false});

  const std::size_t s = std::min<std::size_t>(12, space.dim());
  const double choi = choi_min_eigenvalue(g1, space, s);
  r.bounds.push_back({"Choi restriction minimum eigenvalue nonnegative", choi, 0.0, 1e-9,
                      false, true});
  finish(r, out, timer);
  return r;
}

ExperimentResult run_intertwine(const RunConfig& cfg, std::ostream& out) {
  const Timer timer;
  ExperimentResult r;
  r.experiment = "intertwine";
  const GridSpec grid = cfg.grid();
  const RightDilation dil(grid, cfg.window_units);
  const int budget = std::max(0, grid.cutoff - 2);
  const IntertwineReport rep = shifted_compression_check(dil, 1, 1, 10, 3, cfg.seed, budget);
  r.bounds.push_back({"shift interchanges with compression on degree-limited samples",
                      rep.max_budget_deviation, 0.0, 1e-8, true, false});
  r.bounds.push_back({"unconstrained-sample deviation (truncation-limited)",
                      rep.max_free_deviation, kNan, 0.0, false, false});
  finish(r, out, timer);
  return r;
}

ExperimentResult run_sweep(const RunConfig& cfg, std::ostream& out, std::string* csv) {
  const Timer timer;
  ExperimentResult r;
  r.experiment = "sweep";
  std::string text = sweep_csv_header() + "\n";
  for (int m : cfg.sweep_cells) {
    const SweepRow row = sweep_row(cfg, m);
    text += std::to_string(row.m) + ", " + std::to_string(cfg.cutoff) + ", " +
            format_double(cfg.unit_re) + ", " + format_double(cfg.unit_im) + ", " +
            std::to_string(cfg.onb_index) + ", " + format_double(row.m2_grid) + ", " +
            format_double(row.m2_closed_form) + ", " + format_double(row.t1a_norm) + ", " +
            format_double(row.isometry) + ", " + format_double(row.semigroup) + ", " +
            format_double(row.runtime_ms) + "\n";
    r.bounds.push_back({"compression norm within overlap mass bound at m=" +
                            std::to_string(m),
                        row.t1a_norm - row.m2_grid, 0.0, 1e-6, true, false});
  }
  out << text;
  if (csv != nullptr) {
    *csv = text;
  }
  finish(r, out, timer);
  return r;
}

RunOutput run_configured(const RunConfig& cfg, std::ostream& out) {
  cfg.validate();
  RunOutput output;
  const bool all = cfg.experiment == "all";
  if (all || cfg.experiment == "theorem") {
    output.results.push_back(run_theorem(cfg, out));
  }
  if (all || cfg.experiment == "observation") {
    output.results.push_back(run_observation(cfg, out));
  }
  if (all || cfg.experiment == "semigroup") {
    output.results.push_back(run_semigroup(cfg, out));
  }
  if (all || cfg.experiment == "intertwine") {
    output.results.push_back(run_intertwine(cfg, out));
  }
  if (all || cfg.experiment == "sweep") {
    output.results.push_back(run_sweep(cfg, out, &output.sweep_csv));
  }
  for (const ExperimentResult& r : output.results) {
    output.pass = output.pass && r.pass;
  }
  return output;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::string(buf);
}

const std::string& sweep_csv_header() {
  static const std::string header =
      "m_unit, cutoff, c_re, c_im, k, M2_grid, M2_closed_form, T1a_norm, isometry_defect, "
      "semigroup_defect, runtime_ms";
  return header;
}

std::string experiment_json(const ExperimentResult& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.experiment;
  j["pass"] = r.pass;
  j["bounds"] = nlohmann::ordered_json::array();
  for (const BoundCheck& b : r.bounds) {
    nlohmann::ordered_json entry;
    entry["name"] = b.name;
    entry["value"] = b.value;
    entry["expected"] = b.expected;
    entry["tol"] = b.tol;
    j["bounds"].push_back(entry);
  }
  return j.dump(2) + "\n";
}

bool write_outputs(const RunConfig& cfg, const RunOutput& out, std::ostream& log) {
  if (cfg.out_dir.empty()) {
    return true;
  }
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(cfg.out_dir, ec);
  if (ec) {
    log << "cannot create output directory " << cfg.out_dir << ": " << ec.message() << "\n";
    return false;
  }
  const auto write_file = [&](const fs::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    f << content;
    f.flush();
    if (!f) {
      log << "cannot write " << path.string() << "\n";
      return false;
    }
    return true;
  };
  for (const ExperimentResult& r : out.results) {
    if (!write_file(fs::path(cfg.out_dir) / (r.experiment + ".json"), experiment_json(r))) {
      return false;
    }
  }
  ExperimentResult summary;
  summary.experiment = cfg.experiment;
  summary.pass = out.pass;
  for (const ExperimentResult& r : out.results) {
    summary.bounds.insert(summary.bounds.end(), r.bounds.begin(), r.bounds.end());
  }
  if (!write_file(fs::path(cfg.out_dir) / "summary.json", experiment_json(summary))) {
    return false;
  }
  if (!out.sweep_csv.empty()) {
    if (!write_file(fs::path(cfg.out_dir) / "sweep.csv", out.sweep_csv)) {
      return false;
    }
  }
  return true;
}

}  // namespace arvlab
