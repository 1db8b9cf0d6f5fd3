#pragma once

#include <vector>

#include <Eigen/Dense>

#include "arvlab/fock.hpp"
#include "arvlab/types.hpp"

namespace arvlab {

// Element of the direct integral over the unit time interval of fibers
// H1 (x) E_alpha (x) H2, sampled at the right endpoints alpha_j = (j+1) h,
// j = 0 .. cells_per_unit-1.  The fiber at j stores its coefficients flat as
// (a * d_j + e) * right_dim + b with d_j the Fock dimension over j+1 cells.
// Inner products carry the quadrature weight: <X,Y> = sum_j h <x_j, y_j>.
struct Section {
  GridSpec grid;
  int left_dim = 1;
  int right_dim = 1;
  std::vector<std::vector<cplx>> comp;
};

std::size_t fock_fiber_dim(const GridSpec& grid, int j);
Section zero_section(const GridSpec& grid, int left_dim = 1, int right_dim = 1);

// Component views for plain sections (left_dim == right_dim == 1); the
// fiber at grid point j is presented on cells [0, j+1).
FockVector section_component(const Section& x, int j);
void set_section_component(Section& x, int j, const FockVector& v);

cplx section_inner(const Section& x, const Section& y);
double section_norm(const Section& x);

// (id_H1 (x) X*) applied to Y as a quadrature Bochner sum: X is a plain
// section, Y has left_dim = H1 and right_dim = 1; returns sum_j h (id (x)
// x_j*) y_j in H1.
std::vector<cplx> apply_id_tensor_adjoint(const Section& x, const Section& y);

// (id_H1 (x) X' X*) applied to Y: contracts Y against X and re-expands along
// X', giving the rank-one composite section with fibers z (x) x'_j.
Section apply_rank_one_composite(const Section& x, const Section& xprime, const Section& y);

// Flat index bookkeeping for the weighted section space; used wherever the
// direct integral has to be handed to dense linear algebra in orthonormal
// coordinates (coefficients scaled by sqrt(h)).
class SectionSpace {
 public:
  explicit SectionSpace(const GridSpec& grid);

  const GridSpec& grid() const { return grid_; }
  int points() const { return grid_.cells_per_unit; }
  const OccupationBasis& fiber(int j) const { return basis_[j]; }
  std::size_t offset(int j) const { return offset_[j]; }
  std::size_t dim() const { return dim_; }

  Eigen::VectorXcd to_orthonormal(const Section& x) const;
  Section from_orthonormal(const Eigen::VectorXcd& v) const;

 private:
  GridSpec grid_;
  std::vector<OccupationBasis> basis_;
  std::vector<std::size_t> offset_;
  std::size_t dim_;
};

}  // namespace arvlab
