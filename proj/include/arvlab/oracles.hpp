#pragma once

// Closed-form reference values used to pin expected numbers in tests and
// reports.  Everything here is evaluated from truncated coherent-state
// series and stars-and-bars counting only; nothing in this header may pull
// in the pipeline modules it is used to check.

#include <vector>

#include <Eigen/Dense>

#include "arvlab/types.hpp"

namespace arvlab::oracle {

// S_N(z) = sum_{k<=N} z^k / k!
cplx truncated_exp(cplx z, int cutoff);
double truncated_exp(double x, int cutoff);

// e^x - S_N(x), evaluated as the remainder series (x >= 0).
double exp_tail(double x, int cutoff);

// Squared mass of the suffix-overlap section of the time-1 vector of the
// coherent unit c at basis index 1 (vacuum component), right-endpoint rule:
//   M^2 = sum_j h * S(|c|^2 (1 - a_j)) / S(|c|^2),   a_j = (j+1) h.
double closed_form_overlap_mass(cplx c, int cells_per_unit, int cutoff);

// The same mass at basis index 2 (one particle in the leading suffix cell):
//   M^2 = sum_j h * |c|^2 h * S_{cutoff-1}(|c|^2 (1 - a_j)) / S(|c|^2),
// an O(h) quantity.  Only k in {1, 2} have closed forms here.
double closed_form_overlap_mass_k2(cplx c, int cells_per_unit, int cutoff);

// h -> 0 limit of the same quantity at fixed cutoff:
//   ( sum_{k<=N} |c|^{2k} / (k+1)! ) / S(|c|^2).
double closed_form_overlap_mass_limit(cplx c, int cutoff);

// cutoff -> infinity limit: (1 - e^{-|c|^2}) / |c|^2, with value 1 at c = 0.
double closed_form_overlap_mass_continuum(cplx c);

// Norm of the n-fold truncated product of time-1 unit vectors:
//   sqrt( S(n|c|^2) / S(|c|^2)^n ) <= 1.
double unit_power_norm(cplx c, int n, int cutoff);

// || mult(omega_s, omega_t) - omega_{s+t} ||.  The truncated product of unit
// vectors is colinear with the longer unit vector, so the defect is exactly
//   1 - sqrt( S(x(s+t)) / (S(xs) S(xt)) ),  x = |c|^2.
double unit_factorization_defect(cplx c, double s, double t, int cutoff);

// Worst-case || G_n* G_n - id || over section basis vectors: the column at a
// degree-d basis vector keeps coherent mass S_{N-d}(n x)/S(x)^n, so the
// defect is 1 - 1/S(x)^n (attained at degree-N columns); 0 for the vacuum.
double stinespring_defect_bound(cplx c, int n, int cutoff);

// Dense matrix of (id (x) X*) on the weighted direct-integral space, built
// entry-by-entry from (id (x) x*)(y1 (x) y2) = y1 <x, y2>.  x_components[j]
// holds the grid-point-j coefficients of X; columns are laid out j-major as
// (j, a, e) -> offset_j + a * d_j + e over raw (unweighted) coordinates, so
// the quadrature weight h appears in the entries.  Throws when the product
// dimension exceeds `guard`.
Eigen::MatrixXcd dense_insertion_adjoint(const std::vector<std::vector<cplx>>& x_components,
                                         int h1_dim, double h, std::size_t guard = 5000);

// Series value of the weighted inner product of the unit sections of c1 and
// c2: sum_j h * S(conj(c1) c2 a_j) / sqrt(S(|c1|^2 a_j) S(|c2|^2 a_j)).
cplx closed_form_unit_section_inner(cplx c1, cplx c2, int cells_per_unit, int cutoff);

// Closed form of the compressed matrix element <(Y,vac), T_n(a) (Y,vac)>
// where a is built from the section of the dilation unit c_unit itself and
// Y is the section of an independent unit c_other.  Quadrature double sum
// over truncated coherent inner products of spliced step functions.
double closed_form_compressed_element(cplx c_unit, cplx c_other, int n, int cells_per_unit,
                                      int cutoff);

}  // namespace arvlab::oracle
