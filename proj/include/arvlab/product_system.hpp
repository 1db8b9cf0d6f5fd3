#pragma once

#include <vector>

#include "arvlab/direct_integral.hpp"
#include "arvlab/fock.hpp"
#include "arvlab/types.hpp"

namespace arvlab {

// Normalized coherent vector of constant density c over [0, cells) grid
// cells; the truncation-aware normalization makes it an exact unit vector.
FockVector unit_vector(const GridSpec& grid, cplx c, int cells);

// Section over the unit interval whose fiber at alpha_j is the unit vector
// of time alpha_j (plain section, left_dim = right_dim = 1).
Section unit_section(const GridSpec& grid, cplx c);

// k-th orthonormal basis vector of the Fock space over `cells` cells,
// 1-based: k = 1 is the vacuum, k = 2 one particle in the leftmost cell.
FockVector onb_vector(const GridSpec& grid, int cells, int k);

// Section whose fiber at alpha_j is the k-th basis vector of that fiber.
// Valid for 1 <= k <= cutoff + 1 so every fiber (including the one-cell
// fiber at j = 0) contains the requested vector.
Section onb_section(const GridSpec& grid, int k);

// Suffix overlaps of a time-1 vector: component j is the partial inner
// product of omega1 (on [0, m)) against the k-th basis vector of the suffix
// factor over cells [m-(j+1), m), leaving a vector over [0, m-(j+1)).
std::vector<FockVector> overlap_section(const FockVector& omega1, int k);

// Single overlap component against an arbitrary suffix basis index
// (0-based), used for completeness sums over a whole fiber basis.
FockVector overlap_component(const FockVector& omega1, int j, std::size_t suffix_index);

// Quadrature mass of an overlap section: sum_j h * ||f_j||^2.
double mass_integral(const GridSpec& grid, const std::vector<FockVector>& section);

}  // namespace arvlab
