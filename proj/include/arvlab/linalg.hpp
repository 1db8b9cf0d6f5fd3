#pragma once

#include <cstdint>
#include <functional>

#include <Eigen/Dense>

namespace arvlab {

// Largest singular value of a dense matrix.
double operator_norm(const Eigen::MatrixXcd& a);

// Ascending eigenvalues of a Hermitian matrix (the Hermitian part of `a`
// is taken implicitly by the solver; callers pass Hermitian input).
Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& a);

struct PowerIterationResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  double residual = 0.0;
  Eigen::VectorXcd vector;  // iterate at which `value` was evaluated
};

// Largest eigenvalue of a positive semidefinite operator supplied as a
// matrix-free apply.  The start vector is drawn from a seeded generator, so
// runs are reproducible; the Rayleigh quotient of a PSD operator increases
// monotonically along the iteration and never overshoots the true value.
PowerIterationResult power_iteration(
    std::size_t dim,
    const std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>& apply,
    std::uint64_t seed, int max_iter = 600, double rel_tol = 1e-13);

}  // namespace arvlab
