#include "arvlab/linalg.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "arvlab/types.hpp"

namespace arvlab {

double operator_norm(const Eigen::MatrixXcd& a) {
  if (a.size() == 0) {
    return 0.0;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
  return svd.singularValues()(0);
}

Eigen::VectorXd hermitian_eigenvalues(const Eigen::MatrixXcd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  }
  return solver.eigenvalues();
}

PowerIterationResult power_iteration(
    std::size_t dim,
    const std::function<void(const Eigen::VectorXcd&, Eigen::VectorXcd&)>& apply,
    std::uint64_t seed, int max_iter, double rel_tol) {
  PowerIterationResult res;
  if (dim == 0) {
    res.converged = true;
    return res;
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXcd v(static_cast<Eigen::Index>(dim));
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    v(i) = cplx(gauss(rng), gauss(rng));
  }
  v.normalize();

  Eigen::VectorXcd w(v.size());
  double prev = 0.0;
  for (int it = 1; it <= max_iter; ++it) {
    apply(v, w);
    const double value = std::real(v.dot(w));
    res.value = value;
    res.iterations = it;
    res.residual = (w - value * v).norm();
    res.vector = v;
    const double wn = w.norm();
    if (wn == 0.0) {
      res.value = 0.0;
      res.converged = true;
      return res;
    }
    if (it > 1 && std::abs(value - prev) <= rel_tol * std::max(std::abs(value), 1e-300)) {
      res.converged = true;
      return res;
    }
    prev = value;
    v = w / wn;
  }
  return res;
}

}  // namespace arvlab
