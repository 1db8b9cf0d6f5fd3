#include "arvlab/oracles.hpp"

#include <cmath>
#include <cstdlib>

namespace arvlab::oracle {

cplx truncated_exp(cplx z, int cutoff) {
  cplx sum = 1.0;
  cplx term = 1.0;
  for (int k = 1; k <= cutoff; ++k) {
    term *= z / static_cast<double>(k);
    sum += term;
  }
  return sum;
}

double truncated_exp(double x, int cutoff) { return truncated_exp(cplx(x, 0.0), cutoff).real(); }

double exp_tail(double x, int cutoff) {
  if (x < 0) throw std::invalid_argument("exp_tail: negative argument");
  double term = 1.0;
  for (int k = 1; k <= cutoff + 1; ++k) term *= x / k;
  double sum = 0.0;
  for (int k = cutoff + 1;; ++k) {
    sum += term;
    term *= x / (k + 1);
    if (term < 1e-300 || term < 1e-18 * sum) break;
  }
  return sum;
}

double closed_form_overlap_mass(cplx c, int cells_per_unit, int cutoff) {
  const double x = std::norm(c);
  const double h = 1.0 / cells_per_unit;
  const double sx = truncated_exp(x, cutoff);
  double sum = 0.0;
  for (int j = 0; j < cells_per_unit; ++j) {
    const double alpha = (j + 1) * h;
    sum += h * truncated_exp(x * (1.0 - alpha), cutoff) / sx;
  }
  return sum;
}

double closed_form_overlap_mass_k2(cplx c, int cells_per_unit, int cutoff) {
  const double x = std::norm(c);
  const double h = 1.0 / cells_per_unit;
  const double sx = truncated_exp(x, cutoff);
  double sum = 0.0;
  for (int j = 0; j < cells_per_unit; ++j) {
    const double alpha = (j + 1) * h;
    sum += h * x * h * truncated_exp(x * (1.0 - alpha), cutoff - 1) / sx;
  }
  return sum;
}

double closed_form_overlap_mass_limit(cplx c, int cutoff) {
  const double x = std::norm(c);
  double term = 1.0;  // x^k / (k+1)! at k = 0
  double sum = 1.0;
  for (int k = 1; k <= cutoff; ++k) {
    term *= x / (k + 1);
    sum += term;
  }
  return sum / truncated_exp(x, cutoff);
}

double closed_form_overlap_mass_continuum(cplx c) {
  const double x = std::norm(c);
  if (x < 1e-14) return 1.0 - x / 2.0;
  return -std::expm1(-x) / x;
}

double unit_power_norm(cplx c, int n, int cutoff) {
  const double x = std::norm(c);
  return std::sqrt(truncated_exp(n * x, cutoff) / std::pow(truncated_exp(x, cutoff), n));
}

double unit_factorization_defect(cplx c, double s, double t, int cutoff) {
  const double x = std::norm(c);
  const double num = truncated_exp(x * (s + t), cutoff);
  const double den = truncated_exp(x * s, cutoff) * truncated_exp(x * t, cutoff);
  return 1.0 - std::sqrt(num / den);
}

double stinespring_defect_bound(cplx c, int n, int cutoff) {
  const double x = std::norm(c);
  return 1.0 - 1.0 / std::pow(truncated_exp(x, cutoff), n);
}

Eigen::MatrixXcd dense_insertion_adjoint(const std::vector<std::vector<cplx>>& x_components,
                                         int h1_dim, double h, std::size_t guard) {
  std::size_t cols = 0;
  for (const auto& xj : x_components) cols += h1_dim * xj.size();
  if (cols > guard) throw std::invalid_argument("dense_insertion_adjoint: size guard exceeded");
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(h1_dim, static_cast<Eigen::Index>(cols));
  std::size_t col0 = 0;
  for (const auto& xj : x_components) {
    const std::size_t dj = xj.size();
    for (int a = 0; a < h1_dim; ++a) {
      for (std::size_t e = 0; e < dj; ++e) {
        m(a, static_cast<Eigen::Index>(col0 + a * dj + e)) = h * std::conj(xj[e]);
      }
    }
    col0 += h1_dim * dj;
  }
  return m;
}

cplx closed_form_unit_section_inner(cplx c1, cplx c2, int cells_per_unit, int cutoff) {
  const double h = 1.0 / cells_per_unit;
  const double x1 = std::norm(c1);
  const double x2 = std::norm(c2);
  cplx sum = 0.0;
  for (int j = 0; j < cells_per_unit; ++j) {
    const double a = (j + 1) * h;
    sum += h * truncated_exp(std::conj(c1) * c2 * a, cutoff) /
           std::sqrt(truncated_exp(x1 * a, cutoff) * truncated_exp(x2 * a, cutoff));
  }
  return sum;
}

double closed_form_compressed_element(cplx c_unit, cplx c_other, int n, int cells_per_unit,
                                      int cutoff) {
  const double x1 = std::norm(c_unit);
  const double x2 = std::norm(c_other);
  const double h = 1.0 / cells_per_unit;
  const int m = cells_per_unit;
  // Splice step function g_j = c_other on [0, a_j), c_unit on [a_j, n).
  std::vector<double> nrm(m);
  for (int j = 0; j < m; ++j) {
    const double a = (j + 1) * h;
    nrm[j] = truncated_exp(x2 * a, cutoff) * truncated_exp(x1 * (n - a), cutoff);
  }
  cplx total = 0.0;
  for (int j = 0; j < m; ++j) {
    const double aj = (j + 1) * h;
    for (int jp = 0; jp < m; ++jp) {
      const double ajp = (jp + 1) * h;
      const double lo = std::min(aj, ajp);
      const double hi = std::max(aj, ajp);
      cplx cross = std::conj(c_unit) * c_other * (hi - lo);
      if (aj > ajp) cross = std::conj(cross);
      const cplx inner = x2 * lo + cross + x1 * (n - hi);
      total += h * h * truncated_exp(inner, cutoff) / std::sqrt(nrm[j] * nrm[jp]);
    }
  }
  return total.real();
}

}  // namespace arvlab::oracle
