#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "arvlab/direct_integral.hpp"
#include "arvlab/fock.hpp"
#include "arvlab/occupation_basis.hpp"
#include "arvlab/types.hpp"

namespace arvlab {

// Truncated Fock space over a fixed window of whole time units.  New content
// enters at the time origin and previously stored content is shifted one
// unit block toward the far edge per unit of time.  Occupation that would be
// pushed past the edge raises TruncationOverflow instead of being dropped,
// so every reported number stays exact within the window.
class WindowSpace {
 public:
  WindowSpace(const GridSpec& grid, int window_units);

  const GridSpec& grid() const { return grid_; }
  int window_units() const { return window_units_; }
  int window_cells() const { return basis_.cells(); }
  const OccupationBasis& basis() const { return basis_; }
  std::size_t dim() const { return basis_.dim(); }

  FockVector vacuum() const;

  // Zero-pads a vector over cells [0, k) to the full window.
  FockVector embed(const FockVector& x) const;

  // Shift map for n whole units: the incoming factor occupies cells
  // [0, n*cells_per_unit) and the window content moves right by that many
  // cells.  The joint-occupation form below is exactly isometric; the
  // elementary-tensor form first projects x (x) y onto the joint cutoff.
  FockVector shift_in(int n_units, const SplitVector& xi) const;
  FockVector shift_in(int n_units, const FockVector& x, const FockVector& y) const;

  // Inverse of shift_in (the shift map is onto, so this is its adjoint).
  SplitVector shift_out(int n_units, const FockVector& z) const;

  // Diagonal of the projection onto vectors with no occupation at or beyond
  // cell n*cells_per_unit: the image of the vacuum state projection under n
  // units of shifting.
  std::vector<unsigned char> support_mask(int n_units) const;

  // Same projection assembled by conjugation through shift_in on a basis of
  // the incoming factor; dense, intended for small cross-check instances.
  Eigen::MatrixXcd conjugated_vacuum_projection(int n_units) const;

 private:
  void check_units(int n_units) const;

  GridSpec grid_;
  int window_units_;
  OccupationBasis basis_;
};

// Right dilation on the composite space: sections over the unit interval
// whose fibers carry an extra window factor.  Vectors of the composite space
// are Sections with right_dim equal to the window dimension; the fiber at
// grid point j stores coefficients flat as e * wdim + b with e indexing the
// fiber Fock basis and b the window basis.
class RightDilation {
 public:
  RightDilation(const GridSpec& grid, int window_units);

  const GridSpec& grid() const { return grid_; }
  const WindowSpace& window() const { return window_; }
  const SectionSpace& sections() const { return space_; }
  std::size_t window_dim() const { return window_.dim(); }

  Section zero_vector() const;
  Section lift(const Section& y) const;             // Y (x) window vacuum
  Section vacuum_compress(const Section& xi) const; // id (x) vacuum projection

  // w_n applied to x (x) Xi for x over n units.  Per fiber the product
  // x * y_alpha is reassociated so that the trailing n units enter the
  // window; exact reindexing wherever the joint cutoff admits the input.
  Section apply(int n_units, const FockVector& x, const Section& xi) const;

  // Adjoint of apply: the result carries left_dim = dim of the incoming
  // n-unit Fock space, with fiber layout (q * d_j + e) * wdim + b.
  Section adjoint_apply(int n_units, const Section& xi) const;

  // q-th left slice of an adjoint_apply result, as a composite-space vector.
  Section left_slice(const Section& z, std::size_t q) const;

  // The shifted vacuum-compression projection is diagonal in the composite
  // basis; per-fiber masks over the flat index e * wdim + b.
  std::vector<std::vector<unsigned char>> shifted_vacuum_mask(int n_units) const;
  Section apply_shifted_vacuum(int n_units, const Section& xi) const;

  // Same projection evaluated through apply/adjoint_apply conjugation, for
  // cross-checking against the mask on small instances.
  Section apply_shifted_vacuum_conjugated(int n_units, const Section& xi) const;

 private:
  GridSpec grid_;
  WindowSpace window_;
  SectionSpace space_;
};

}  // namespace arvlab
