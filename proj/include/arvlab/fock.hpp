#pragma once

#include <vector>

#include "arvlab/occupation_basis.hpp"
#include "arvlab/types.hpp"

namespace arvlab {

// Vector in the truncated symmetric Fock space over the cells of `interval`,
// in orthonormal occupation coordinates (the cell width h is already folded
// into the one-particle modes, so plain Euclidean sums give inner products).
struct FockVector {
  GridSpec grid;
  Interval interval;
  std::vector<cplx> coeff;
};

OccupationBasis basis_of(const FockVector& x);
FockVector zero_vector(const GridSpec& grid, Interval iv);
FockVector vacuum_vector(const GridSpec& grid, Interval iv);
FockVector basis_vector(const GridSpec& grid, Interval iv, std::size_t index);

cplx inner(const FockVector& x, const FockVector& y);
double norm(const FockVector& x);
// Squared coefficient mass per total occupation degree.
std::vector<double> degree_masses(const FockVector& x);

// Truncated exponential (coherent) vector of the step function taking value
// f_cells[i] on the i-th cell of `iv`: the coefficient at occupation n is
// prod_i phi_i^{n_i}/sqrt(n_i!) with phi_i = sqrt(h) f_cells[i].
FockVector exponential_vector(const GridSpec& grid, Interval iv, const std::vector<cplx>& f_cells);

// Same coefficients over a shifted interval; the basis order only sees
// relative cell positions, so this is free of arithmetic.
FockVector translate(const FockVector& x, int cell_shift);

// Coefficients of x over the split basis at `cut_cell`.  Because filtered
// pairs are enumerated in joint order the reindexing map is the identity on
// coefficient arrays; the returned basis carries the pair bookkeeping.  This
// realizes the structure unitary of the splitting and is exactly unitary.
struct SplitVector {
  FilteredTensorBasis basis;
  std::vector<cplx> coeff;
};
SplitVector factorize(const FockVector& x, int cut_cell);

// Product of x on [a,b) and y on [b,c): coefficient at a joint occupation is
// the product of the factor coefficients; pairs with total occupation above
// the cutoff are dropped and their mass is reported through *defect (the
// exact dropped norm, not a float cancellation).
FockVector multiply(const FockVector& x, const FockVector& y, double* defect = nullptr);
FockVector multiply(const FockVector& x, const FockVector& y, const FilteredTensorBasis& ftb,
                    double* defect = nullptr);

// (id (x) x*) applied to y: y lives on [a,c), x on a suffix [b,c); returns
// the contraction on [a,b).  Adjoint of z -> multiply(z, x).
FockVector partial_inner_right(const FockVector& y, const FockVector& x);
FockVector partial_inner_right(const FockVector& y, const FockVector& x,
                               const FilteredTensorBasis& ftb);

}  // namespace arvlab
