#include "arvlab/product_system.hpp"

#include <stdexcept>

namespace arvlab {

FockVector unit_vector(const GridSpec& grid, cplx c, int cells) {
  grid.validate();
  if (cells < 0) {
    throw std::invalid_argument("unit_vector: negative cell count");
  }
  const Interval iv{0, cells};
  std::vector<cplx> density(static_cast<std::size_t>(cells), c);
  FockVector x = exponential_vector(grid, iv, density);
  const double n = norm(x);
  for (auto& v : x.coeff) {
    v /= n;
  }
  return x;
}

Section unit_section(const GridSpec& grid, cplx c) {
  Section x = zero_section(grid, 1, 1);
  for (int j = 0; j < grid.cells_per_unit; ++j) {
    set_section_component(x, j, unit_vector(grid, c, j + 1));
  }
  return x;
}

FockVector onb_vector(const GridSpec& grid, int cells, int k) {
  grid.validate();
  if (cells <= 0) {
    throw std::invalid_argument("onb_vector: need at least one cell");
  }
  const OccupationBasis basis(cells, grid.cutoff);
  if (k < 1 || static_cast<std::size_t>(k) > basis.dim()) {
    throw std::invalid_argument("onb_vector: basis index out of range");
  }
  return basis_vector(grid, Interval{0, cells}, static_cast<std::size_t>(k - 1));
}

Section onb_section(const GridSpec& grid, int k) {
  grid.validate();
  if (k < 1 || k > grid.cutoff + 1) {
    throw std::invalid_argument("onb_section: index must lie in every fiber");
  }
  Section x = zero_section(grid, 1, 1);
  for (int j = 0; j < grid.cells_per_unit; ++j) {
    set_section_component(x, j, onb_vector(grid, j + 1, k));
  }
  return x;
}

FockVector overlap_component(const FockVector& omega1, int j, std::size_t suffix_index) {
  const int m = omega1.grid.cells_per_unit;
  if (omega1.interval.cells() != m) {
    throw std::invalid_argument("overlap_component: expected a time-1 vector");
  }
  if (j < 0 || j >= m) {
    throw std::invalid_argument("overlap_component: grid point out of range");
  }
  const int suffix_cells = j + 1;
  const int cut = omega1.interval.start_cell + (m - suffix_cells);
  FockVector suffix = basis_vector(omega1.grid, Interval{cut, omega1.interval.end_cell}, suffix_index);
  return partial_inner_right(omega1, suffix);
}

std::vector<FockVector> overlap_section(const FockVector& omega1, int k) {
  const int m = omega1.grid.cells_per_unit;
  if (k < 1 || k > omega1.grid.cutoff + 1) {
    throw std::invalid_argument("overlap_section: index must lie in every fiber");
  }
  std::vector<FockVector> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    out.push_back(overlap_component(omega1, j, static_cast<std::size_t>(k - 1)));
  }
  return out;
}

double mass_integral(const GridSpec& grid, const std::vector<FockVector>& section) {
  if (static_cast<int>(section.size()) != grid.cells_per_unit) {
    throw std::invalid_argument("mass_integral: one component per grid point expected");
  }
  const double h = grid.h();
  double acc = 0.0;
  for (const auto& f : section) {
    const double n = norm(f);
    acc += h * n * n;
  }
  return acc;
}

}  // namespace arvlab
