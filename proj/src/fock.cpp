#include "arvlab/fock.hpp"

#include <cmath>

namespace arvlab {

namespace {

void check_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
  if (!(a == b)) throw std::invalid_argument(std::string(where) + ": grid mismatch");
}

}  // namespace

OccupationBasis basis_of(const FockVector& x) {
  return OccupationBasis(x.interval.cells(), x.grid.cutoff);
}

FockVector zero_vector(const GridSpec& grid, Interval iv) {
  grid.validate();
  iv.validate();
  OccupationBasis b(iv.cells(), grid.cutoff);
  return FockVector{grid, iv, std::vector<cplx>(b.dim(), cplx(0.0))};
}

FockVector vacuum_vector(const GridSpec& grid, Interval iv) {
  FockVector x = zero_vector(grid, iv);
  x.coeff[0] = 1.0;
  return x;
}

FockVector basis_vector(const GridSpec& grid, Interval iv, std::size_t index) {
  FockVector x = zero_vector(grid, iv);
  if (index >= x.coeff.size()) throw std::invalid_argument("basis_vector: index out of range");
  x.coeff[index] = 1.0;
  return x;
}

cplx inner(const FockVector& x, const FockVector& y) {
  check_same_grid(x.grid, y.grid, "inner");
  if (x.coeff.size() != y.coeff.size()) throw std::invalid_argument("inner: dimension mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < x.coeff.size(); ++i) s += std::conj(x.coeff[i]) * y.coeff[i];
  return s;
}

double norm(const FockVector& x) {
  double s = 0.0;
  for (const cplx& c : x.coeff) s += std::norm(c);
  return std::sqrt(s);
}

std::vector<double> degree_masses(const FockVector& x) {
  OccupationBasis b = basis_of(x);
  std::vector<double> mass(x.grid.cutoff + 1, 0.0);
  for (int d = 0; d <= x.grid.cutoff; ++d) {
    for (std::size_t i = b.degree_begin(d); i < b.degree_end(d); ++i) {
      mass[d] += std::norm(x.coeff[i]);
    }
  }
  return mass;
}

FockVector exponential_vector(const GridSpec& grid, Interval iv, const std::vector<cplx>& f_cells) {
  if (static_cast<int>(f_cells.size()) != iv.cells())
    throw std::invalid_argument("exponential_vector: one value per cell required");
  FockVector x = zero_vector(grid, iv);
  const double sqrth = std::sqrt(grid.h());
  std::vector<double> inv_sqrt_fact(grid.cutoff + 1);
  inv_sqrt_fact[0] = 1.0;
  for (int k = 1; k <= grid.cutoff; ++k)
    inv_sqrt_fact[k] = inv_sqrt_fact[k - 1] / std::sqrt(static_cast<double>(k));
  OccupationBasis b = basis_of(x);
  b.for_each([&](std::size_t idx, const std::vector<int>& occ) {
    cplx v = 1.0;
    for (std::size_t i = 0; i < occ.size(); ++i) {
      for (int r = 0; r < occ[i]; ++r) v *= sqrth * f_cells[i];
      v *= inv_sqrt_fact[occ[i]];
    }
    x.coeff[idx] = v;
  });
  return x;
}

FockVector translate(const FockVector& x, int cell_shift) {
  FockVector y = x;
  y.interval.start_cell += cell_shift;
  y.interval.end_cell += cell_shift;
  return y;
}

SplitVector factorize(const FockVector& x, int cut_cell) {
  if (cut_cell < x.interval.start_cell || cut_cell > x.interval.end_cell)
    throw std::invalid_argument("factorize: cut outside interval");
  OccupationBasis left(cut_cell - x.interval.start_cell, x.grid.cutoff);
  OccupationBasis right(x.interval.end_cell - cut_cell, x.grid.cutoff);
  return SplitVector{FilteredTensorBasis(left, right), x.coeff};
}

FockVector multiply(const FockVector& x, const FockVector& y, double* defect) {
  check_same_grid(x.grid, y.grid, "multiply");
  if (x.interval.end_cell != y.interval.start_cell)
    throw std::invalid_argument("multiply: intervals must be adjacent");
  FilteredTensorBasis ftb(basis_of(x), basis_of(y));
  return multiply(x, y, ftb, defect);
}

FockVector multiply(const FockVector& x, const FockVector& y, const FilteredTensorBasis& ftb,
                    double* defect) {
  FockVector out = zero_vector(x.grid, Interval{x.interval.start_cell, y.interval.end_cell});
  for (std::size_t t = 0; t < ftb.dim(); ++t) {
    const auto [l, r] = ftb.pair(t);
    out.coeff[t] = x.coeff[l] * y.coeff[r];
  }
  if (defect != nullptr) {
    const std::vector<double> mx = degree_masses(x);
    const std::vector<double> my = degree_masses(y);
    double dropped = 0.0;
    for (int d1 = 0; d1 <= x.grid.cutoff; ++d1) {
      for (int d2 = x.grid.cutoff - d1 + 1; d2 <= x.grid.cutoff; ++d2) {
        dropped += mx[d1] * my[d2];
      }
    }
    *defect = std::sqrt(dropped);
  }
  return out;
}

FockVector partial_inner_right(const FockVector& y, const FockVector& x) {
  check_same_grid(x.grid, y.grid, "partial_inner_right");
  if (x.interval.end_cell != y.interval.end_cell ||
      x.interval.start_cell < y.interval.start_cell)
    throw std::invalid_argument("partial_inner_right: x must occupy a suffix of y's interval");
  OccupationBasis left(x.interval.start_cell - y.interval.start_cell, y.grid.cutoff);
  OccupationBasis right(x.interval.cells(), y.grid.cutoff);
  FilteredTensorBasis ftb(left, right);
  return partial_inner_right(y, x, ftb);
}

FockVector partial_inner_right(const FockVector& y, const FockVector& x,
                               const FilteredTensorBasis& ftb) {
  FockVector out =
      zero_vector(y.grid, Interval{y.interval.start_cell, x.interval.start_cell});
  for (std::size_t t = 0; t < ftb.dim(); ++t) {
    const auto [l, r] = ftb.pair(t);
    out.coeff[l] += std::conj(x.coeff[r]) * y.coeff[t];
  }
  return out;
}

}  // namespace arvlab
