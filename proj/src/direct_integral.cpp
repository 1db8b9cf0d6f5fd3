#include "arvlab/direct_integral.hpp"

#include <stdexcept>

#include "arvlab/occupation_basis.hpp"

namespace arvlab {

std::size_t fock_fiber_dim(const GridSpec& grid, int j) {
  if (j < 0 || j >= grid.cells_per_unit) {
    throw std::invalid_argument("fock_fiber_dim: grid point out of range");
  }
  return OccupationBasis(j + 1, grid.cutoff).dim();
}

Section zero_section(const GridSpec& grid, int left_dim, int right_dim) {
  grid.validate();
  if (left_dim <= 0 || right_dim <= 0) {
    throw std::invalid_argument("zero_section: dims must be positive");
  }
  Section x;
  x.grid = grid;
  x.left_dim = left_dim;
  x.right_dim = right_dim;
  x.comp.resize(grid.cells_per_unit);
  for (int j = 0; j < grid.cells_per_unit; ++j) {
    const std::size_t d = fock_fiber_dim(grid, j);
    x.comp[j].assign(static_cast<std::size_t>(left_dim) * d * right_dim, cplx(0.0, 0.0));
  }
  return x;
}

FockVector section_component(const Section& x, int j) {
  if (x.left_dim != 1 || x.right_dim != 1) {
    throw std::invalid_argument("section_component: section has tensor factors");
  }
  if (j < 0 || j >= x.grid.cells_per_unit) {
    throw std::invalid_argument("section_component: grid point out of range");
  }
  FockVector v;
  v.grid = x.grid;
  v.interval = Interval{0, j + 1};
  v.coeff = x.comp[j];
  return v;
}

void set_section_component(Section& x, int j, const FockVector& v) {
  if (x.left_dim != 1 || x.right_dim != 1) {
    throw std::invalid_argument("set_section_component: section has tensor factors");
  }
  if (j < 0 || j >= x.grid.cells_per_unit) {
    throw std::invalid_argument("set_section_component: grid point out of range");
  }
  if (!(v.grid == x.grid) || v.interval.cells() != j + 1) {
    throw std::invalid_argument("set_section_component: component shape mismatch");
  }
  x.comp[j] = v.coeff;
}

cplx section_inner(const Section& x, const Section& y) {
  if (!(x.grid == y.grid) || x.left_dim != y.left_dim || x.right_dim != y.right_dim) {
    throw std::invalid_argument("section_inner: incompatible sections");
  }
  const double h = x.grid.h();
  cplx acc(0.0, 0.0);
  for (int j = 0; j < x.grid.cells_per_unit; ++j) {
    cplx fib(0.0, 0.0);
    const auto& xs = x.comp[j];
    const auto& ys = y.comp[j];
    for (std::size_t i = 0; i < xs.size(); ++i) {
      fib += std::conj(xs[i]) * ys[i];
    }
    acc += h * fib;
  }
  return acc;
}

double section_norm(const Section& x) {
  return std::sqrt(std::max(0.0, section_inner(x, x).real()));
}

std::vector<cplx> apply_id_tensor_adjoint(const Section& x, const Section& y) {
  if (!(x.grid == y.grid)) {
    throw std::invalid_argument("apply_id_tensor_adjoint: grid mismatch");
  }
  if (x.left_dim != 1 || x.right_dim != 1 || y.right_dim != 1) {
    throw std::invalid_argument("apply_id_tensor_adjoint: unsupported tensor shape");
  }
  const double h = x.grid.h();
  std::vector<cplx> out(static_cast<std::size_t>(y.left_dim), cplx(0.0, 0.0));
  for (int j = 0; j < x.grid.cells_per_unit; ++j) {
    const std::size_t d = x.comp[j].size();
    if (y.comp[j].size() != d * static_cast<std::size_t>(y.left_dim)) {
      throw std::invalid_argument("apply_id_tensor_adjoint: fiber shape mismatch");
    }
    for (int a = 0; a < y.left_dim; ++a) {
      cplx acc(0.0, 0.0);
      const std::size_t base = static_cast<std::size_t>(a) * d;
      for (std::size_t e = 0; e < d; ++e) {
        acc += std::conj(x.comp[j][e]) * y.comp[j][base + e];
      }
      out[static_cast<std::size_t>(a)] += h * acc;
    }
  }
  return out;
}

Section apply_rank_one_composite(const Section& x, const Section& xprime, const Section& y) {
  if (!(x.grid == xprime.grid)) {
    throw std::invalid_argument("apply_rank_one_composite: grid mismatch");
  }
  if (xprime.left_dim != 1 || xprime.right_dim != 1) {
    throw std::invalid_argument("apply_rank_one_composite: xprime must be a plain section");
  }
  const std::vector<cplx> z = apply_id_tensor_adjoint(x, y);
  Section out = zero_section(x.grid, y.left_dim, 1);
  for (int j = 0; j < x.grid.cells_per_unit; ++j) {
    const std::size_t d = xprime.comp[j].size();
    for (std::size_t a = 0; a < z.size(); ++a) {
      for (std::size_t e = 0; e < d; ++e) {
        out.comp[j][a * d + e] = z[a] * xprime.comp[j][e];
      }
    }
  }
  return out;
}

SectionSpace::SectionSpace(const GridSpec& grid) : grid_(grid) {
  grid_.validate();
  basis_.reserve(static_cast<std::size_t>(grid_.cells_per_unit));
  offset_.reserve(static_cast<std::size_t>(grid_.cells_per_unit));
  std::size_t off = 0;
  for (int j = 0; j < grid_.cells_per_unit; ++j) {
    basis_.emplace_back(j + 1, grid_.cutoff);
    offset_.push_back(off);
    off += basis_.back().dim();
  }
  dim_ = off;
}

Eigen::VectorXcd SectionSpace::to_orthonormal(const Section& x) const {
  if (!(x.grid == grid_) || x.left_dim != 1 || x.right_dim != 1) {
    throw std::invalid_argument("SectionSpace::to_orthonormal: incompatible section");
  }
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim_));
  const double w = std::sqrt(grid_.h());
  for (int j = 0; j < grid_.cells_per_unit; ++j) {
    for (std::size_t e = 0; e < x.comp[j].size(); ++e) {
      v(static_cast<Eigen::Index>(offset_[j] + e)) = w * x.comp[j][e];
    }
  }
  return v;
}

Section SectionSpace::from_orthonormal(const Eigen::VectorXcd& v) const {
  if (static_cast<std::size_t>(v.size()) != dim_) {
    throw std::invalid_argument("SectionSpace::from_orthonormal: size mismatch");
  }
  Section x = zero_section(grid_, 1, 1);
  const double w = 1.0 / std::sqrt(grid_.h());
  for (int j = 0; j < grid_.cells_per_unit; ++j) {
    for (std::size_t e = 0; e < x.comp[j].size(); ++e) {
      x.comp[j][e] = w * v(static_cast<Eigen::Index>(offset_[j] + e));
    }
  }
  return x;
}

}  // namespace arvlab
