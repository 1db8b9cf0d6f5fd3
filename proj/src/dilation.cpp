#include "arvlab/dilation.hpp"

#include <algorithm>
#include <stdexcept>

namespace arvlab {

namespace {

int checked_window_cells(const GridSpec& grid, int window_units) {
  grid.validate();
  if (window_units < 1) {
    throw std::invalid_argument("WindowSpace: window must span at least one unit");
  }
  return window_units * grid.cells_per_unit;
}

}  // namespace

WindowSpace::WindowSpace(const GridSpec& grid, int window_units)
    : grid_(grid),
      window_units_(window_units),
      basis_(checked_window_cells(grid, window_units), grid.cutoff) {}

void WindowSpace::check_units(int n_units) const {
  if (n_units < 0 || n_units > window_units_) {
    throw std::invalid_argument("WindowSpace: shift amount outside window");
  }
}

FockVector WindowSpace::vacuum() const {
  return vacuum_vector(grid_, Interval{0, window_cells()});
}

FockVector WindowSpace::embed(const FockVector& x) const {
  if (!(x.grid == grid_) || x.interval.start_cell != 0 || x.interval.cells() > window_cells()) {
    throw std::invalid_argument("WindowSpace::embed: vector does not fit the window");
  }
  FockVector out = zero_vector(grid_, Interval{0, window_cells()});
  const OccupationBasis src(x.interval.cells(), grid_.cutoff);
  std::vector<int> occ(static_cast<std::size_t>(window_cells()), 0);
  for (std::size_t i = 0; i < x.coeff.size(); ++i) {
    if (x.coeff[i] == cplx(0.0, 0.0)) {
      continue;
    }
    const std::vector<int> part = src.occupation(i);
    std::fill(occ.begin(), occ.end(), 0);
    std::copy(part.begin(), part.end(), occ.begin());
    out.coeff[basis_.rank(occ)] += x.coeff[i];
  }
  return out;
}

FockVector WindowSpace::shift_in(int n_units, const SplitVector& xi) const {
  check_units(n_units);
  const int nm = n_units * grid_.cells_per_unit;
  const int w = window_cells();
  if (xi.basis.left().cells() != nm || xi.basis.left().cutoff() != grid_.cutoff ||
      xi.basis.right().cells() != w || xi.basis.right().cutoff() != grid_.cutoff) {
    throw std::invalid_argument("WindowSpace::shift_in: basis shape mismatch");
  }
  const int keep = w - nm;
  FockVector out = zero_vector(grid_, Interval{0, w});
  std::vector<int> occ(static_cast<std::size_t>(w), 0);
  for (std::size_t t = 0; t < xi.coeff.size(); ++t) {
    const cplx v = xi.coeff[t];
    if (v == cplx(0.0, 0.0)) {
      continue;
    }
    const auto [l, r] = xi.basis.pair(t);
    const std::vector<int> occ_r = basis_.occupation(r);
    for (int cell = keep; cell < w; ++cell) {
      if (occ_r[static_cast<std::size_t>(cell)] != 0) {
        throw TruncationOverflow("shift_in: window content would pass the edge; enlarge the window");
      }
    }
    const std::vector<int> occ_l = xi.basis.left().occupation(l);
    std::copy(occ_l.begin(), occ_l.end(), occ.begin());
    std::copy(occ_r.begin(), occ_r.begin() + keep, occ.begin() + nm);
    out.coeff[basis_.rank(occ)] += v;
  }
  return out;
}

FockVector WindowSpace::shift_in(int n_units, const FockVector& x, const FockVector& y) const {
  check_units(n_units);
  const int nm = n_units * grid_.cells_per_unit;
  const int w = window_cells();
  if (!(x.grid == grid_) || x.interval.cells() != nm) {
    throw std::invalid_argument("WindowSpace::shift_in: incoming factor must span the shift");
  }
  if (!(y.grid == grid_) || y.interval.cells() != w) {
    throw std::invalid_argument("WindowSpace::shift_in: window vector shape mismatch");
  }
  const int keep = w - nm;
  const OccupationBasis xbasis(nm, grid_.cutoff);
  FockVector out = zero_vector(grid_, Interval{0, w});
  std::vector<int> occ(static_cast<std::size_t>(w), 0);
  for (std::size_t b = 0; b < y.coeff.size(); ++b) {
    const cplx yv = y.coeff[b];
    if (yv == cplx(0.0, 0.0)) {
      continue;
    }
    const std::vector<int> occ_b = basis_.occupation(b);
    for (int cell = keep; cell < w; ++cell) {
      if (occ_b[static_cast<std::size_t>(cell)] != 0) {
        throw TruncationOverflow("shift_in: window content would pass the edge; enlarge the window");
      }
    }
    const int deg_b = static_cast<int>(basis_.degree_of(b));
    for (std::size_t i = 0; i < x.coeff.size(); ++i) {
      const cplx xv = x.coeff[i];
      if (xv == cplx(0.0, 0.0)) {
        continue;
      }
      if (static_cast<int>(xbasis.degree_of(i)) + deg_b > grid_.cutoff) {
        continue;
      }
      const std::vector<int> occ_i = xbasis.occupation(i);
      std::copy(occ_i.begin(), occ_i.end(), occ.begin());
      std::copy(occ_b.begin(), occ_b.begin() + keep, occ.begin() + nm);
      out.coeff[basis_.rank(occ)] += xv * yv;
    }
  }
  return out;
}

SplitVector WindowSpace::shift_out(int n_units, const FockVector& z) const {
  check_units(n_units);
  const int nm = n_units * grid_.cells_per_unit;
  const int w = window_cells();
  if (!(z.grid == grid_) || z.interval.cells() != w) {
    throw std::invalid_argument("WindowSpace::shift_out: window vector shape mismatch");
  }
  SplitVector out{FilteredTensorBasis(OccupationBasis(nm, grid_.cutoff), basis_), {}};
  out.coeff.assign(out.basis.dim(), cplx(0.0, 0.0));
  std::vector<int> joint(static_cast<std::size_t>(nm + w), 0);
  for (std::size_t t = 0; t < z.coeff.size(); ++t) {
    const cplx v = z.coeff[t];
    if (v == cplx(0.0, 0.0)) {
      continue;
    }
    const std::vector<int> occ = basis_.occupation(t);
    std::fill(joint.begin(), joint.end(), 0);
    std::copy(occ.begin(), occ.begin() + nm, joint.begin());
    std::copy(occ.begin() + nm, occ.end(), joint.begin() + nm);
    out.coeff[out.basis.joint().rank(joint)] += v;
  }
  return out;
}

std::vector<unsigned char> WindowSpace::support_mask(int n_units) const {
  check_units(n_units);
  const int nm = n_units * grid_.cells_per_unit;
  std::vector<unsigned char> mask(basis_.dim(), 0);
  basis_.for_each([&](std::size_t idx, const std::vector<int>& occ) {
    for (std::size_t cell = static_cast<std::size_t>(nm); cell < occ.size(); ++cell) {
      if (occ[cell] != 0) {
        return;
      }
    }
    mask[idx] = 1;
  });
  return mask;
}

Eigen::MatrixXcd WindowSpace::conjugated_vacuum_projection(int n_units) const {
  check_units(n_units);
  if (dim() > 6000) {
    throw std::invalid_argument("conjugated_vacuum_projection: instance too large for dense assembly");
  }
  const int nm = n_units * grid_.cells_per_unit;
  const OccupationBasis xbasis(nm, grid_.cutoff);
  const FockVector vac = vacuum();
  Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim()),
                                              static_cast<Eigen::Index>(dim()));
  for (std::size_t q = 0; q < xbasis.dim(); ++q) {
    const FockVector xq = basis_vector(grid_, Interval{0, nm}, q);
    const FockVector img = shift_in(n_units, xq, vac);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < img.coeff.size(); ++i) {
      v(static_cast<Eigen::Index>(i)) = img.coeff[i];
    }
    p += v * v.adjoint();
  }
  return p;
}

RightDilation::RightDilation(const GridSpec& grid, int window_units)
    : grid_(grid), window_(grid, window_units), space_(grid) {}

Section RightDilation::zero_vector() const {
  return zero_section(grid_, 1, static_cast<int>(window_.dim()));
}

Section RightDilation::lift(const Section& y) const {
  if (!(y.grid == grid_) || y.left_dim != 1 || y.right_dim != 1) {
    throw std::invalid_argument("RightDilation::lift: plain section expected");
  }
  const std::size_t wdim = window_.dim();
  Section out = zero_vector();
  for (int j = 0; j < grid_.cells_per_unit; ++j) {
    for (std::size_t e = 0; e < y.comp[j].size(); ++e) {
      out.comp[j][e * wdim] = y.comp[j][e];
    }
  }
  return out;
}

Section RightDilation::vacuum_compress(const Section& xi) const {
  const std::size_t wdim = window_.dim();
  if (!(xi.grid == grid_) || xi.left_dim != 1 ||
      static_cast<std::size_t>(xi.right_dim) != wdim) {
    throw std::invalid_argument("RightDilation::vacuum_compress: composite vector expected");
  }
  Section out = zero_vector();
  for (int j = 0; j < grid_.cells_per_unit; ++j) {
    const std::size_t d = space_.fiber(j).dim();
    for (std::size_t e = 0; e < d; ++e) {
      out.comp[j][e * wdim] = xi.comp[j][e * wdim];
    }
  }
  return out;
}

Section RightDilation::apply(int n_units, const FockVector& x, const Section& xi) const {
  const std::size_t wdim = window_.dim();
  if (n_units < 0 || n_units > window_.window_units()) {
    throw std::invalid_argument("RightDilation::apply: shift amount outside window");
  }
  if (!(xi.grid == grid_) || xi.left_dim != 1 ||
      static_cast<std::size_t>(xi.right_dim) != wdim) {
    throw std::invalid_argument("RightDilation::apply: composite vector expected");
  }
  if (n_units == 0) {
    if (x.interval.cells() != 0) {
      throw std::invalid_argument("RightDilation::apply: time-zero factor must be scalar");
    }
    Section out = xi;
    for (auto& comp : out.comp) {
      for (auto& v : comp) {
        v *= x.coeff[0];
      }
    }
    return out;
  }
  const int m = grid_.cells_per_unit;
  const int nm = n_units * m;
  const int w = window_.window_cells();
  const int keep = w - nm;
  if (!(x.grid == grid_) || x.interval.cells() != nm) {
    throw std::invalid_argument("RightDilation::apply: incoming factor must span the shift");
  }
  const OccupationBasis xbasis(nm, grid_.cutoff);
  const OccupationBasis& wbasis = window_.basis();

  struct XEntry {
    cplx value;
    int degree;
    std::vector<int> occ;
  };
  std::vector<XEntry> xs;
  for (std::size_t i = 0; i < x.coeff.size(); ++i) {
    if (x.coeff[i] != cplx(0.0, 0.0)) {
      xs.push_back({x.coeff[i], static_cast<int>(xbasis.degree_of(i)), xbasis.occupation(i)});
    }
  }

  Section out = zero_vector();
  std::vector<int> kocc(static_cast<std::size_t>(w), 0);
  for (int j = 0; j < m; ++j) {
    const int jc = j + 1;
    const OccupationBasis& fb = space_.fiber(j);

    // split of each incoming basis occupation at the fiber boundary
    std::vector<std::size_t> a_rank(xs.size());
    std::vector<int> tail_deg(xs.size());
    std::vector<int> scratch(static_cast<std::size_t>(jc));
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::copy(xs[i].occ.begin(), xs[i].occ.begin() + jc, scratch.begin());
      a_rank[i] = fb.rank(scratch);
      int hd = 0;
      for (int c = 0; c < jc; ++c) {
        hd += scratch[static_cast<std::size_t>(c)];
      }
      tail_deg[i] = xs[i].degree - hd;
    }

    const auto& comp = xi.comp[j];
    for (std::size_t flat = 0; flat < comp.size(); ++flat) {
      const cplx v = comp[flat];
      if (v == cplx(0.0, 0.0)) {
        continue;
      }
      const std::size_t e = flat / wdim;
      const std::size_t b = flat % wdim;
      const std::vector<int> occ_b = wbasis.occupation(b);
      for (int cell = keep; cell < w; ++cell) {
        if (occ_b[static_cast<std::size_t>(cell)] != 0) {
          throw TruncationOverflow("apply: window content would pass the edge; enlarge the window");
        }
      }
      const int deg_e = static_cast<int>(fb.degree_of(e));
      const int deg_b = static_cast<int>(wbasis.degree_of(b));
      const std::vector<int> occ_e = fb.occupation(e);
      for (std::size_t i = 0; i < xs.size(); ++i) {
        if (xs[i].degree + deg_e > grid_.cutoff) {
          continue;
        }
        if (tail_deg[i] + deg_e + deg_b > grid_.cutoff) {
          continue;
        }
        std::copy(xs[i].occ.begin() + jc, xs[i].occ.end(), kocc.begin());
        std::copy(occ_e.begin(), occ_e.end(), kocc.begin() + (nm - jc));
        std::copy(occ_b.begin(), occ_b.begin() + keep, kocc.begin() + nm);
        const std::size_t krank = wbasis.rank(kocc);
        out.comp[j][a_rank[i] * wdim + krank] += xs[i].value * v;
      }
    }
  }
  return out;
}

Section RightDilation::adjoint_apply(int n_units, const Section& xi) const {
  const std::size_t wdim = window_.dim();
  if (n_units < 0 || n_units > window_.window_units()) {
    throw std::invalid_argument("RightDilation::adjoint_apply: shift amount outside window");
  }
  if (!(xi.grid == grid_) || xi.left_dim != 1 ||
      static_cast<std::size_t>(xi.right_dim) != wdim) {
    throw std::invalid_argument("RightDilation::adjoint_apply: composite vector expected");
  }
  if (n_units == 0) {
    return xi;
  }
  const int m = grid_.cells_per_unit;
  const int nm = n_units * m;
  const int w = window_.window_cells();
  const OccupationBasis xbasis(nm, grid_.cutoff);
  const OccupationBasis& wbasis = window_.basis();

  Section out = zero_section(grid_, static_cast<int>(xbasis.dim()), static_cast<int>(wdim));
  std::vector<int> xocc(static_cast<std::size_t>(nm), 0);
  std::vector<int> eocc;
  std::vector<int> bocc(static_cast<std::size_t>(w), 0);
  for (int j = 0; j < m; ++j) {
    const int jc = j + 1;
    const OccupationBasis& fb = space_.fiber(j);
    const std::size_t d = fb.dim();
    eocc.assign(static_cast<std::size_t>(jc), 0);
    const auto& comp = xi.comp[j];
    for (std::size_t flat = 0; flat < comp.size(); ++flat) {
      const cplx v = comp[flat];
      if (v == cplx(0.0, 0.0)) {
        continue;
      }
      const std::size_t a = flat / wdim;
      const std::size_t k = flat % wdim;
      const std::vector<int> occ_a = fb.occupation(a);
      const std::vector<int> occ_k = wbasis.occupation(k);
      std::copy(occ_a.begin(), occ_a.end(), xocc.begin());
      std::copy(occ_k.begin(), occ_k.begin() + (nm - jc), xocc.begin() + jc);
      std::copy(occ_k.begin() + (nm - jc), occ_k.begin() + nm, eocc.begin());
      int deg_x = 0;
      for (int c = 0; c < nm; ++c) {
        deg_x += xocc[static_cast<std::size_t>(c)];
      }
      int deg_e = 0;
      for (int c = 0; c < jc; ++c) {
        deg_e += eocc[static_cast<std::size_t>(c)];
      }
      if (deg_x + deg_e > grid_.cutoff) {
        continue;
      }
      std::fill(bocc.begin(), bocc.end(), 0);
      std::copy(occ_k.begin() + nm, occ_k.end(), bocc.begin());
      const std::size_t q = xbasis.rank(xocc);
      const std::size_t e = fb.rank(eocc);
      const std::size_t b = wbasis.rank(bocc);
      out.comp[j][(q * d + e) * wdim + b] += v;
    }
  }
  return out;
}

Section RightDilation::left_slice(const Section& z, std::size_t q) const {
  const std::size_t wdim = window_.dim();
  if (!(z.grid == grid_) || static_cast<std::size_t>(z.right_dim) != wdim || z.left_dim < 1) {
    throw std::invalid_argument("RightDilation::left_slice: composite vector expected");
  }
  if (q >= static_cast<std::size_t>(z.left_dim)) {
    throw std::invalid_argument("RightDilation::left_slice: slice index out of range");
  }
  Section out = zero_vector();
  for (int j = 0; j < grid_.cells_per_unit; ++j) {
    const std::size_t d = space_.fiber(j).dim();
    const std::size_t base = q * d * wdim;
    std::copy(z.comp[j].begin() + base, z.comp[j].begin() + base + d * wdim,
              out.comp[j].begin());
  }
  return out;
}

std::vector<std::vector<unsigned char>> RightDilation::shifted_vacuum_mask(int n_units) const {
  if (n_units < 0 || n_units > window_.window_units()) {
    throw std::invalid_argument("RightDilation::shifted_vacuum_mask: shift amount outside window");
  }
  const std::size_t wdim = window_.dim();
  const OccupationBasis& wbasis = window_.basis();
  const int nm = n_units * grid_.cells_per_unit;

  std::vector<unsigned char> tail_free(wdim, 0);
  wbasis.for_each([&](std::size_t idx, const std::vector<int>& occ) {
    for (std::size_t cell = static_cast<std::size_t>(nm); cell < occ.size(); ++cell) {
      if (occ[cell] != 0) {
        return;
      }
    }
    tail_free[idx] = 1;
  });

  std::vector<std::vector<unsigned char>> mask(static_cast<std::size_t>(grid_.cells_per_unit));
  for (int j = 0; j < grid_.cells_per_unit; ++j) {
    const OccupationBasis& fb = space_.fiber(j);
    mask[j].assign(fb.dim() * wdim, 0);
    for (std::size_t e = 0; e < fb.dim(); ++e) {
      const int deg_e = static_cast<int>(fb.degree_of(e));
      for (std::size_t b = 0; b < wdim; ++b) {
        if (tail_free[b] && deg_e + static_cast<int>(wbasis.degree_of(b)) <= grid_.cutoff) {
          mask[j][e * wdim + b] = 1;
        }
      }
    }
  }
  return mask;
}

Section RightDilation::apply_shifted_vacuum(int n_units, const Section& xi) const {
  const auto mask = shifted_vacuum_mask(n_units);
  const std::size_t wdim = window_.dim();
  if (!(xi.grid == grid_) || xi.left_dim != 1 ||
      static_cast<std::size_t>(xi.right_dim) != wdim) {
    throw std::invalid_argument("RightDilation::apply_shifted_vacuum: composite vector expected");
  }
  Section out = xi;
  for (int j = 0; j < grid_.cells_per_unit; ++j) {
    for (std::size_t flat = 0; flat < out.comp[j].size(); ++flat) {
      if (!mask[j][flat]) {
        out.comp[j][flat] = cplx(0.0, 0.0);
      }
    }
  }
  return out;
}

Section RightDilation::apply_shifted_vacuum_conjugated(int n_units, const Section& xi) const {
  if (n_units == 0) {
    return vacuum_compress(xi);
  }
  const int nm = n_units * grid_.cells_per_unit;
  const OccupationBasis xbasis(nm, grid_.cutoff);
  const std::size_t wdim = window_.dim();
  Section z = adjoint_apply(n_units, xi);
  for (int j = 0; j < grid_.cells_per_unit; ++j) {
    const std::size_t d = space_.fiber(j).dim();
    for (std::size_t q = 0; q < xbasis.dim(); ++q) {
      for (std::size_t e = 0; e < d; ++e) {
        const std::size_t base = (q * d + e) * wdim;
        for (std::size_t b = 1; b < wdim; ++b) {
          z.comp[j][base + b] = cplx(0.0, 0.0);
        }
      }
    }
  }
  Section out = zero_vector();
  for (std::size_t q = 0; q < xbasis.dim(); ++q) {
    const Section part = left_slice(z, q);
    const FockVector xq = basis_vector(grid_, Interval{0, nm}, q);
    const Section img = apply(n_units, xq, part);
    for (int j = 0; j < grid_.cells_per_unit; ++j) {
      for (std::size_t flat = 0; flat < out.comp[j].size(); ++flat) {
        out.comp[j][flat] += img.comp[j][flat];
      }
    }
  }
  return out;
}

}  // namespace arvlab
