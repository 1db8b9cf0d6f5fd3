#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "arvlab/dilation.hpp"
#include "arvlab/direct_integral.hpp"
#include "arvlab/fock.hpp"
#include "arvlab/types.hpp"

namespace arvlab {

// n-fold truncated product of time-1 unit vectors of density c, living on
// [0, n*m); not renormalized, so its norm is sqrt(S(n|c|^2)/S(|c|^2)^n) <= 1.
// n = 0 gives the scalar 1 on the empty interval.
FockVector unit_power(const GridSpec& grid, cplx c, int n_units);

// Stinespring factor of the integer-time compression semigroup.  The map
// G_n : L -> E_n (x) L sends the fiber-j basis section e_a to the split of
// e_a * omega1^n along E_n (x) E_alpha_j; it never mixes fibers, so it is
// stored as one block per fiber with rows indexed (q * d_j + e) for q in the
// E_n basis and e in the fiber basis.  Blocks are valid in both raw and
// sqrt(h)-scaled section coordinates since the weight cancels fiberwise.
struct StinespringBlocks {
  GridSpec grid;
  int n_units = 0;
  std::size_t en_dim = 1;
  std::vector<Eigen::MatrixXcd> block;  // per fiber j: (en_dim * d_j) x d_j
};

StinespringBlocks stinespring_blocks(const GridSpec& grid, cplx c, int n_units);

// max_j ||B_j^dagger B_j - id|| over the materialized blocks.
double isometry_defect(const StinespringBlocks& g);

// Same quantity without materializing blocks.  Distinct columns of one block
// have disjoint occupation prefixes, so G*G is diagonal, and the diagonal
// entry of a degree-d column is the unit-power mass kept up to degree
// cutoff - d; the defect is read off a single degree-mass profile, exactly,
// at any grid size.
double stinespring_isometry_defect(const GridSpec& grid, cplx c, int n_units);

// T_n(b) = G_n^dagger (id (x) b) G_n on sqrt(h)-scaled section coordinates.
Eigen::MatrixXcd compressed_apply(const StinespringBlocks& g, const SectionSpace& space,
                                  const Eigen::MatrixXcd& b);

// Minimum eigenvalue of the Choi matrix of T_n restricted to the span of the
// first `subspace_dim` section coordinates.  The Choi matrix is assembled as
// a Gram matrix of cross-block column slices, so it is PSD up to float noise
// whenever the Stinespring form is faithfully realized.
double choi_min_eigenvalue(const StinespringBlocks& g, const SectionSpace& space,
                           std::size_t subspace_dim);

// The contraction V = (id_E1 (x) X*) G_1 : L -> E_1 for X the k-th basis
// section, realized through index tables: a coefficient of V(Y) at the E_1
// index l picks the fiber-j coefficient of Y at the prefix of l and the
// omega1 coefficient at the suffix of l merged with the k-th occupation.
// ||V||^2 equals ||T_1(XX*)|| and is the quantity bounded by the overlap
// mass integral.  Actions are given in sqrt(h)-scaled section coordinates;
// tables use UINT32_MAX for entries removed by the occupation filter.
class WitnessContraction {
 public:
  WitnessContraction(const GridSpec& grid, const FockVector& omega1, int k);

  const SectionSpace& space() const { return space_; }
  std::size_t domain_dim() const { return space_.dim(); }
  std::size_t range_dim() const { return e1_.dim(); }

  Eigen::VectorXcd apply(const Eigen::VectorXcd& y) const;
  Eigen::VectorXcd apply_adjoint(const Eigen::VectorXcd& z) const;
  // V V^dagger on E_1, the operator whose top eigenvalue is ||T_1(XX*)||.
  Eigen::VectorXcd apply_gram(const Eigen::VectorXcd& z) const;
  Eigen::VectorXcd apply_section(const Section& y) const;
  Eigen::MatrixXcd dense(std::size_t guard = 4000000) const;

 private:
  GridSpec grid_;
  SectionSpace space_;
  OccupationBasis e1_;
  std::vector<cplx> w_;
  std::vector<std::vector<std::uint32_t>> prefix_;
  std::vector<std::vector<std::uint32_t>> windex_;
};

// Generic-pipeline image (id (x) X*) G_n (Y) in E_n, evaluated fiber by
// fiber as a weighted sum of suffix contractions of y_j * omega1^n against
// x_j; works for arbitrary plain sections X, Y.
FockVector witness_image(const GridSpec& grid, cplx c, int n_units, const Section& x,
                         const Section& y);

// <lift(Y), theta_n(XX* (x) vacuum proj) lift(Y)> evaluated through the
// dilation: sum_q |<w_n(e_q (x) lift(X)), lift(Y)>|^2.  Independent of the
// Stinespring blocks and of the contraction tables.
double dagger_via_dilation(const RightDilation& dil, int n_units, const Section& x,
                           const Section& y);

struct TheoremReport {
  double a_norm = 0.0;            // squared section norm of X; 1 for basis sections
  double m2_grid = 0.0;           // quadrature mass of the overlap section
  double m2_closed_form = 0.0;    // series value; NaN when k has no closed form here
  double t1a_norm = 0.0;          // ||T_1(XX*)|| = sigma_max(V)^2
  double norm_excess = 0.0;       // t1a_norm - m2_grid
  double dagger_deviation = 0.0;  // max |quadratic form - ||V(Y)||^2| over samples
  double z1_excess = 0.0;         // max |<z1, V(Y)>| - sqrt(m2_grid) over unit samples
  bool not_projection = false;
  bool used_power_iteration = false;
  int dagger_samples = 0;
};

// Drives the endomorphism-failure verification: builds X = k-th basis
// section, the overlap mass integral, the contraction V, and checks the
// matrix-element identity on random unit sections.  The quadratic-form side
// goes through the dilation for the vacuum unit and through the Stinespring
// blocks otherwise, so the two sides never share code with V.
TheoremReport verify_theorem(const GridSpec& grid, cplx c, int k, int window_units,
                             int dagger_samples, std::uint64_t seed);

struct IntertwineReport {
  int alpha_units = 0;
  int t_units = 0;
  int samples = 0;
  int probes = 0;
  double max_budget_deviation = 0.0;  // degree-limited samples; should be float noise
  double max_free_deviation = 0.0;    // unconstrained samples; truncation-limited
};

// Checks theta_alpha(T_t(b)) = T^alpha_t(theta_alpha(b)) on random rank-one
// b = u v*, applied to random probes, where T^alpha compresses by the
// shifted vacuum projection.  Samples with per-entry degree at most
// `degree_budget` keep every intermediate below the occupation cutoff, so
// their deviation is pure float noise; unconstrained samples are measured
// and reported alongside.
IntertwineReport shifted_compression_check(const RightDilation& dil, int alpha_units,
                                           int t_units, int samples, int probes,
                                           std::uint64_t seed, int degree_budget);

struct ObservationReport {
  int n_units = 1;
  double split_deviation = 0.0;        // split pipeline vs normalized product form
  double split_deviation_naive = 0.0;  // same without the normalization ratio
  double unit_inner_deviation = 0.0;   // <X,Y> pipeline vs truncated series
  double dagger_pipeline = 0.0;        // ||witness image||^2, X from c_unit, Y from c_other
  double dagger_closed_form = 0.0;     // quadrature double sum over spliced densities
  double same_unit_value = 0.0;        // X = Y = section of c_unit; -> 1 within tails
  double same_unit_closed_form = 0.0;  // series value without the split-filter loss
};

// Cross-checks the explicit coherent-vector forms against the generic
// pipeline: the split of y_alpha * omega1^n against the product of shorter
// unit vectors, the section inner product against its series value, and the
// compressed matrix element against the quadrature double sum.
ObservationReport observation_crosscheck(const GridSpec& grid, cplx c_unit, cplx c_other,
                                         int n_units);

// Plain section with independent standard-normal coefficients, normalized to
// unit weighted norm.
Section random_unit_section(const GridSpec& grid, std::mt19937_64& rng);

// Composite-space vector for the dilation checks.  degree_budget >= 0 keeps
// only entries whose fiber and window degrees sum to at most the budget;
// free_tail_units >= 0 additionally zeroes window occupation within that
// many trailing units (room for shifts without overflow).  Negative values
// disable the respective restriction.  Normalized to unit weighted norm.
Section random_composite(const RightDilation& dil, std::mt19937_64& rng, int degree_budget,
                         int free_tail_units);

}  // namespace arvlab
