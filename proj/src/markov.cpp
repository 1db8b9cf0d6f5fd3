#include "arvlab/markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "arvlab/linalg.hpp"
#include "arvlab/oracles.hpp"
#include "arvlab/product_system.hpp"

namespace arvlab {

namespace {

int occ_degree(const std::vector<int>& occ, int first, int last) {
  int d = 0;
  for (int i = first; i < last; ++i) {
    d += occ[static_cast<std::size_t>(i)];
  }
  return d;
}

void axpy_section(Section& acc, const Section& s, cplx coef) {
  for (std::size_t j = 0; j < acc.comp.size(); ++j) {
    for (std::size_t i = 0; i < acc.comp[j].size(); ++i) {
      const cplx sv = s.comp[j][i];
      if (sv != cplx(0.0, 0.0)) {
        acc.comp[j][i] += coef * sv;
      }
    }
  }
}

double section_distance(const Section& a, const Section& b) {
  Section d = a;
  axpy_section(d, b, cplx(-1.0, 0.0));
  return section_norm(d);
}

}  // namespace

FockVector unit_power(const GridSpec& grid, cplx c, int n_units) {
  grid.validate();
  if (n_units < 0) {
    throw std::invalid_argument("unit_power: negative time");
  }
  if (n_units == 0) {
    return vacuum_vector(grid, Interval{0, 0});
  }
  const int m = grid.cells_per_unit;
  FockVector p = unit_vector(grid, c, m);
  for (int i = 1; i < n_units; ++i) {
    p = multiply(p, translate(unit_vector(grid, c, m), i * m));
  }
  return p;
}

StinespringBlocks stinespring_blocks(const GridSpec& grid, cplx c, int n_units) {
  grid.validate();
  if (n_units < 0) {
    throw std::invalid_argument("stinespring_blocks: negative time");
  }
  const int m = grid.cells_per_unit;
  const int nm = n_units * m;
  StinespringBlocks g;
  g.grid = grid;
  g.n_units = n_units;
  const OccupationBasis en(nm, grid.cutoff);
  g.en_dim = en.dim();
  const FockVector w = unit_power(grid, c, n_units);
  g.block.reserve(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) {
    const int jc = j + 1;
    const OccupationBasis fiber(jc, grid.cutoff);
    const std::size_t d = fiber.dim();
    Eigen::MatrixXcd b = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(g.en_dim * d),
                                                static_cast<Eigen::Index>(d));
    if (n_units == 0) {
      for (std::size_t a = 0; a < d; ++a) {
        b(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = 1.0;
      }
    } else {
      const FockVector wj = translate(w, jc);
      for (std::size_t a = 0; a < d; ++a) {
        const FockVector ea = basis_vector(grid, Interval{0, jc}, a);
        const SplitVector s = factorize(multiply(ea, wj), nm);
        for (std::size_t t = 0; t < s.coeff.size(); ++t) {
          if (s.coeff[t] == cplx(0.0, 0.0)) {
            continue;
          }
          const auto [q, e] = s.basis.pair(t);
          b(static_cast<Eigen::Index>(q * d + e), static_cast<Eigen::Index>(a)) = s.coeff[t];
        }
      }
    }
    g.block.push_back(std::move(b));
  }
  return g;
}

double isometry_defect(const StinespringBlocks& g) {
  double worst = 0.0;
  for (const Eigen::MatrixXcd& b : g.block) {
    const Eigen::Index d = b.cols();
    const Eigen::MatrixXcd gram =
        b.adjoint() * b - Eigen::MatrixXcd::Identity(d, d);
    const Eigen::VectorXd ev = hermitian_eigenvalues(gram);
    worst = std::max({worst, std::abs(ev(0)), std::abs(ev(ev.size() - 1))});
  }
  return worst;
}

double stinespring_isometry_defect(const GridSpec& grid, cplx c, int n_units) {
  // The column at a degree-d basis section keeps exactly the mass of the
  // unit power up to degree cutoff - d (pairs above the cutoff are dropped,
  // and distinct columns have disjoint occupation prefixes), so the whole
  // diagonal of G*G is a partial-sum profile of one degree-mass vector.
  const FockVector w = unit_power(grid, c, n_units);
  const std::vector<double> mass = degree_masses(w);
  double defect = 0.0;
  double partial = 0.0;
  std::vector<double> upto(static_cast<std::size_t>(grid.cutoff) + 1, 0.0);
  for (int k = 0; k <= grid.cutoff; ++k) {
    partial += mass[static_cast<std::size_t>(k)];
    upto[static_cast<std::size_t>(k)] = partial;
  }
  for (int da = 0; da <= grid.cutoff; ++da) {
    defect = std::max(defect, std::abs(1.0 - upto[static_cast<std::size_t>(grid.cutoff - da)]));
  }
  return defect;
}

Eigen::MatrixXcd compressed_apply(const StinespringBlocks& g, const SectionSpace& space,
                                  const Eigen::MatrixXcd& b) {
  if (!(space.grid() == g.grid)) {
    throw std::invalid_argument("compressed_apply: grid mismatch");
  }
  const Eigen::Index dim = static_cast<Eigen::Index>(space.dim());
  if (b.rows() != dim || b.cols() != dim) {
    throw std::invalid_argument("compressed_apply: operator shape mismatch");
  }
  const int m = space.points();
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t q = 0; q < g.en_dim; ++q) {
    for (int j = 0; j < m; ++j) {
      const Eigen::Index dj = static_cast<Eigen::Index>(space.fiber(j).dim());
      const Eigen::Index oj = static_cast<Eigen::Index>(space.offset(j));
      const auto bj = g.block[j].middleRows(static_cast<Eigen::Index>(q) * dj, dj);
      for (int jp = 0; jp < m; ++jp) {
        const Eigen::Index djp = static_cast<Eigen::Index>(space.fiber(jp).dim());
        const Eigen::Index ojp = static_cast<Eigen::Index>(space.offset(jp));
        const auto bjp = g.block[jp].middleRows(static_cast<Eigen::Index>(q) * djp, djp);
        out.block(oj, ojp, dj, djp) += bj.adjoint() * b.block(oj, ojp, dj, djp) * bjp;
      }
    }
  }
  return out;
}

double choi_min_eigenvalue(const StinespringBlocks& g, const SectionSpace& space,
                           std::size_t subspace_dim) {
  if (subspace_dim == 0 || subspace_dim > space.dim()) {
    throw std::invalid_argument("choi_min_eigenvalue: bad subspace dimension");
  }
  const int m = space.points();
  std::vector<int> fiber_of(subspace_dim);
  std::vector<std::size_t> row_of(subspace_dim);
  for (std::size_t i = 0; i < subspace_dim; ++i) {
    int j = 0;
    while (j + 1 < m && space.offset(j + 1) <= i) {
      ++j;
    }
    fiber_of[i] = j;
    row_of[i] = i - space.offset(j);
  }
  const std::size_t s = subspace_dim;
  const Eigen::Index en = static_cast<Eigen::Index>(g.en_dim);
  std::vector<Eigen::VectorXcd> w(s * s);
  for (std::size_t i = 0; i < s; ++i) {
    for (std::size_t k = 0; k < s; ++k) {
      Eigen::VectorXcd& v = w[i * s + k];
      v = Eigen::VectorXcd::Zero(en);
      if (fiber_of[i] != fiber_of[k]) {
        continue;
      }
      const Eigen::MatrixXcd& b = g.block[fiber_of[k]];
      const std::size_t d = space.fiber(fiber_of[k]).dim();
      for (Eigen::Index q = 0; q < en; ++q) {
        v(q) = b(static_cast<Eigen::Index>(q * d + row_of[i]),
                 static_cast<Eigen::Index>(row_of[k]));
      }
    }
  }
  Eigen::MatrixXcd choi(static_cast<Eigen::Index>(s * s), static_cast<Eigen::Index>(s * s));
  for (std::size_t r1 = 0; r1 < s * s; ++r1) {
    for (std::size_t r2 = 0; r2 < s * s; ++r2) {
      choi(static_cast<Eigen::Index>(r1), static_cast<Eigen::Index>(r2)) = w[r1].dot(w[r2]);
    }
  }
  return hermitian_eigenvalues(choi)(0);
}

WitnessContraction::WitnessContraction(const GridSpec& grid, const FockVector& omega1, int k)
    : grid_((grid.validate(), grid)),
      space_(grid),
      e1_(grid.cells_per_unit, grid.cutoff),
      w_(omega1.coeff) {
  const int m = grid.cells_per_unit;
  if (!(omega1.grid == grid) || omega1.interval.cells() != m) {
    throw std::invalid_argument("WitnessContraction: time-1 vector expected");
  }
  if (k < 1 || k > grid.cutoff + 1) {
    throw std::invalid_argument("WitnessContraction: basis index must lie in every fiber");
  }
  prefix_.resize(static_cast<std::size_t>(m));
  windex_.resize(static_cast<std::size_t>(m));
  std::vector<int> merged(static_cast<std::size_t>(m), 0);
  std::vector<int> head;
  for (int j = 0; j < m; ++j) {
    const int jc = j + 1;
    const OccupationBasis& fiber = space_.fiber(j);
    const std::vector<int> nu = fiber.occupation(static_cast<std::size_t>(k - 1));
    const int dnu = occ_degree(nu, 0, jc);
    prefix_[j].assign(e1_.dim(), UINT32_MAX);
    windex_[j].assign(e1_.dim(), UINT32_MAX);
    head.assign(static_cast<std::size_t>(jc), 0);
    e1_.for_each([&](std::size_t l, const std::vector<int>& occ) {
      if (e1_.degree_of(l) + dnu > grid_.cutoff) {
        return;
      }
      std::copy(occ.begin(), occ.begin() + jc, head.begin());
      std::copy(occ.begin() + jc, occ.end(), merged.begin());
      std::copy(nu.begin(), nu.end(), merged.begin() + (m - jc));
      prefix_[j][l] = static_cast<std::uint32_t>(fiber.rank(head));
      windex_[j][l] = static_cast<std::uint32_t>(e1_.rank(merged));
    });
  }
}

Eigen::VectorXcd WitnessContraction::apply(const Eigen::VectorXcd& y) const {
  if (y.size() != static_cast<Eigen::Index>(space_.dim())) {
    throw std::invalid_argument("WitnessContraction::apply: dimension mismatch");
  }
  const double sh = std::sqrt(grid_.h());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(e1_.dim()));
  for (int j = 0; j < grid_.cells_per_unit; ++j) {
    const Eigen::Index oj = static_cast<Eigen::Index>(space_.offset(j));
    for (std::size_t l = 0; l < e1_.dim(); ++l) {
      const std::uint32_t p = prefix_[j][l];
      if (p == UINT32_MAX) {
        continue;
      }
      out(static_cast<Eigen::Index>(l)) += sh * y(oj + p) * w_[windex_[j][l]];
    }
  }
  return out;
}

Eigen::VectorXcd WitnessContraction::apply_adjoint(const Eigen::VectorXcd& z) const {
  if (z.size() != static_cast<Eigen::Index>(e1_.dim())) {
    throw std::invalid_argument("WitnessContraction::apply_adjoint: dimension mismatch");
  }
  const double sh = std::sqrt(grid_.h());
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space_.dim()));
  for (int j = 0; j < grid_.cells_per_unit; ++j) {
    const Eigen::Index oj = static_cast<Eigen::Index>(space_.offset(j));
    for (std::size_t l = 0; l < e1_.dim(); ++l) {
      const std::uint32_t p = prefix_[j][l];
      if (p == UINT32_MAX) {
        continue;
      }
      out(oj + p) += sh * std::conj(w_[windex_[j][l]]) * z(static_cast<Eigen::Index>(l));
    }
  }
  return out;
}

Eigen::VectorXcd WitnessContraction::apply_gram(const Eigen::VectorXcd& z) const {
  return apply(apply_adjoint(z));
}

Eigen::VectorXcd WitnessContraction::apply_section(const Section& y) const {
  return apply(space_.to_orthonormal(y));
}

Eigen::MatrixXcd WitnessContraction::dense(std::size_t guard) const {
  if (e1_.dim() * space_.dim() > guard) {
    throw std::invalid_argument("WitnessContraction::dense: size guard exceeded");
  }
  const double sh = std::sqrt(grid_.h());
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(e1_.dim()),
                                                static_cast<Eigen::Index>(space_.dim()));
  for (int j = 0; j < grid_.cells_per_unit; ++j) {
    const Eigen::Index oj = static_cast<Eigen::Index>(space_.offset(j));
    for (std::size_t l = 0; l < e1_.dim(); ++l) {
      const std::uint32_t p = prefix_[j][l];
      if (p == UINT32_MAX) {
        continue;
      }
      out(static_cast<Eigen::Index>(l), oj + p) += sh * w_[windex_[j][l]];
    }
  }
  return out;
}

FockVector witness_image(const GridSpec& grid, cplx c, int n_units, const Section& x,
                         const Section& y) {
  grid.validate();
  if (n_units < 1) {
    throw std::invalid_argument("witness_image: need at least one time unit");
  }
  if (!(x.grid == grid) || !(y.grid == grid) || x.left_dim != 1 || x.right_dim != 1 ||
      y.left_dim != 1 || y.right_dim != 1) {
    throw std::invalid_argument("witness_image: plain sections over the same grid expected");
  }
  const int m = grid.cells_per_unit;
  const int nm = n_units * m;
  const double h = grid.h();
  const FockVector w = unit_power(grid, c, n_units);
  FockVector out = zero_vector(grid, Interval{0, nm});
  for (int j = 0; j < m; ++j) {
    const int jc = j + 1;
    const FockVector z = multiply(section_component(y, j), translate(w, jc));
    const FockVector xj = translate(section_component(x, j), nm);
    const FockVector term = partial_inner_right(z, xj);
    for (std::size_t i = 0; i < out.coeff.size(); ++i) {
      out.coeff[i] += h * term.coeff[i];
    }
  }
  return out;
}

double dagger_via_dilation(const RightDilation& dil, int n_units, const Section& x,
                           const Section& y) {
  const GridSpec& grid = dil.grid();
  const int nm = n_units * grid.cells_per_unit;
  const OccupationBasis en(nm, grid.cutoff);
  const Section lx = dil.lift(x);
  const Section ly = dil.lift(y);
  double sum = 0.0;
  for (std::size_t q = 0; q < en.dim(); ++q) {
    const FockVector eq = basis_vector(grid, Interval{0, nm}, q);
    sum += std::norm(section_inner(dil.apply(n_units, eq, lx), ly));
  }
  return sum;
}

TheoremReport verify_theorem(const GridSpec& grid, cplx c, int k, int window_units,
                             int dagger_samples, std::uint64_t seed) {
  grid.validate();
  TheoremReport rep;
  const int m = grid.cells_per_unit;
  const FockVector omega1 = unit_vector(grid, c, m);
  const Section x = onb_section(grid, k);
  const double xn = section_norm(x);
  rep.a_norm = xn * xn;
  rep.m2_grid = mass_integral(grid, overlap_section(omega1, k));
  if (k == 1) {
    rep.m2_closed_form = oracle::closed_form_overlap_mass(c, m, grid.cutoff);
  } else if (k == 2) {
    rep.m2_closed_form = oracle::closed_form_overlap_mass_k2(c, m, grid.cutoff);
  } else {
    rep.m2_closed_form = std::numeric_limits<double>::quiet_NaN();
  }

  const WitnessContraction v(grid, omega1, k);
  Eigen::VectorXcd z1;
  if (v.range_dim() * v.domain_dim() <= 4000000) {
    const Eigen::MatrixXcd vm = v.dense();
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(vm, Eigen::ComputeThinU);
    const Eigen::VectorXd sv = svd.singularValues();
    const double s0 = sv.size() > 0 ? sv(0) : 0.0;
    rep.t1a_norm = s0 * s0;
    z1 = svd.matrixU().col(0);
    rep.not_projection = rep.t1a_norm < 1.0 - 1e-6;
    if (!rep.not_projection) {
      for (Eigen::Index i = 0; i < sv.size(); ++i) {
        const double ev = sv(i) * sv(i);
        if (ev > 1e-6 && ev < 1.0 - 1e-6) {
          rep.not_projection = true;
          break;
        }
      }
    }
  } else {
    const auto gram = [&v](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
      out = v.apply_gram(in);
    };
    const PowerIterationResult pi =
        power_iteration(v.range_dim(), gram, seed ^ 0x5bf03635a1ce4b19ULL);
    rep.t1a_norm = pi.value;
    z1 = pi.vector;
    rep.used_power_iteration = true;
    rep.not_projection = rep.t1a_norm < 1.0 - 1e-6;
  }
  rep.norm_excess = rep.t1a_norm - rep.m2_grid;

  const bool coherent = c != cplx(0.0, 0.0);
  if (dagger_samples > 0 && (!coherent || v.domain_dim() <= 4000)) {
    rep.dagger_samples = dagger_samples;
    std::mt19937_64 rng(seed);
    const double msqrt = std::sqrt(std::max(rep.m2_grid, 0.0));
    std::unique_ptr<RightDilation> dil;
    Eigen::MatrixXcd ta;
    if (coherent) {
      const StinespringBlocks g = stinespring_blocks(grid, c, 1);
      const Eigen::VectorXcd xo = v.space().to_orthonormal(x);
      ta = compressed_apply(g, v.space(), Eigen::MatrixXcd(xo * xo.adjoint()));
    } else {
      dil = std::make_unique<RightDilation>(grid, std::max(window_units, 2));
    }
    for (int i = 0; i < dagger_samples; ++i) {
      const Section y = random_unit_section(grid, rng);
      const Eigen::VectorXcd vy = v.apply_section(y);
      const double rhs = vy.squaredNorm();
      double lhs = 0.0;
      if (coherent) {
        const Eigen::VectorXcd yo = v.space().to_orthonormal(y);
        lhs = std::real(yo.dot(ta * yo));
      } else {
        lhs = dagger_via_dilation(*dil, 1, x, y);
      }
      rep.dagger_deviation = std::max(rep.dagger_deviation, std::abs(lhs - rhs));
      if (z1.size() == vy.size() && z1.size() > 0) {
        rep.z1_excess = std::max(rep.z1_excess, std::abs(z1.dot(vy)) - msqrt);
      }
    }
  }
  return rep;
}

IntertwineReport shifted_compression_check(const RightDilation& dil, int alpha_units,
                                           int t_units, int samples, int probes,
                                           std::uint64_t seed, int degree_budget) {
  const GridSpec& grid = dil.grid();
  const int m = grid.cells_per_unit;
  IntertwineReport rep;
  rep.alpha_units = alpha_units;
  rep.t_units = t_units;
  rep.samples = samples;
  rep.probes = probes;
  const OccupationBasis et(t_units * m, grid.cutoff);
  const OccupationBasis ea(alpha_units * m, grid.cutoff);
  const int tail = alpha_units + t_units;
  std::mt19937_64 rng(seed);

  const int free_samples = std::min(samples, 2);
  for (int s = 0; s < samples + free_samples; ++s) {
    const bool budgeted = s < samples;
    const int budget = budgeted ? degree_budget : -1;
    const Section u = random_composite(dil, rng, budget, tail);
    const Section v = random_composite(dil, rng, budget, tail);

    std::vector<Section> qu, qv;
    qu.reserve(et.dim());
    qv.reserve(et.dim());
    for (std::size_t q = 0; q < et.dim(); ++q) {
      const FockVector eq = basis_vector(grid, Interval{0, t_units * m}, q);
      qu.push_back(dil.vacuum_compress(dil.apply(t_units, eq, u)));
      qv.push_back(dil.vacuum_compress(dil.apply(t_units, eq, v)));
    }
    std::vector<Section> au, av;
    au.reserve(ea.dim());
    av.reserve(ea.dim());
    for (std::size_t q = 0; q < ea.dim(); ++q) {
      const FockVector eq = basis_vector(grid, Interval{0, alpha_units * m}, q);
      au.push_back(dil.apply(alpha_units, eq, u));
      av.push_back(dil.apply(alpha_units, eq, v));
    }

    for (int p = 0; p < probes; ++p) {
      const Section psi = random_composite(dil, rng, budget, tail);

      Section lhs = dil.zero_vector();
      const Section za = dil.adjoint_apply(alpha_units, psi);
      for (std::size_t qp = 0; qp < ea.dim(); ++qp) {
        const Section slice = dil.left_slice(za, qp);
        Section combo = dil.zero_vector();
        for (std::size_t q = 0; q < et.dim(); ++q) {
          const cplx coef = section_inner(qv[q], slice);
          if (coef != cplx(0.0, 0.0)) {
            axpy_section(combo, qu[q], coef);
          }
        }
        const FockVector eqp = basis_vector(grid, Interval{0, alpha_units * m}, qp);
        axpy_section(lhs, dil.apply(alpha_units, eqp, combo), cplx(1.0, 0.0));
      }

      const Section masked = dil.apply_shifted_vacuum(alpha_units, psi);
      const Section zt = dil.adjoint_apply(t_units, masked);
      Section inner_sum = dil.zero_vector();
      for (std::size_t qp = 0; qp < et.dim(); ++qp) {
        const Section slice = dil.left_slice(zt, qp);
        Section combo = dil.zero_vector();
        for (std::size_t q = 0; q < ea.dim(); ++q) {
          const cplx coef = section_inner(av[q], slice);
          if (coef != cplx(0.0, 0.0)) {
            axpy_section(combo, au[q], coef);
          }
        }
        const FockVector eqp = basis_vector(grid, Interval{0, t_units * m}, qp);
        axpy_section(inner_sum, dil.apply(t_units, eqp, combo), cplx(1.0, 0.0));
      }
      const Section rhs = dil.apply_shifted_vacuum(alpha_units, inner_sum);

      const double dev = section_distance(lhs, rhs) /
                         std::max({section_norm(lhs), section_norm(rhs), 1.0});
      if (budgeted) {
        rep.max_budget_deviation = std::max(rep.max_budget_deviation, dev);
      } else {
        rep.max_free_deviation = std::max(rep.max_free_deviation, dev);
      }
    }
  }
  return rep;
}

ObservationReport observation_crosscheck(const GridSpec& grid, cplx c_unit, cplx c_other,
                                         int n_units) {
  grid.validate();
  if (n_units < 1) {
    throw std::invalid_argument("observation_crosscheck: need at least one time unit");
  }
  ObservationReport rep;
  rep.n_units = n_units;
  const int m = grid.cells_per_unit;
  const int nm = n_units * m;
  const double x = std::norm(c_unit);
  const double sx = oracle::truncated_exp(x, grid.cutoff);
  const FockVector w = unit_power(grid, c_unit, n_units);
  const Section xs = unit_section(grid, c_unit);
  const Section ys = unit_section(grid, c_other);

  for (int j = 0; j < m; ++j) {
    const int jc = j + 1;
    const double alpha = (j + 1) * grid.h();
    const FockVector yj = section_component(ys, j);
    const SplitVector s = factorize(multiply(yj, translate(w, jc)), nm);
    const FockVector pre =
        nm - jc > 0 ? multiply(yj, translate(unit_vector(grid, c_unit, nm - jc), jc)) : yj;
    const FockVector suf = unit_vector(grid, c_unit, jc);
    const double rho =
        std::sqrt(oracle::truncated_exp(x * (n_units - alpha), grid.cutoff) *
                  oracle::truncated_exp(x * alpha, grid.cutoff) / std::pow(sx, n_units));
    for (std::size_t t = 0; t < s.coeff.size(); ++t) {
      const auto [l, r] = s.basis.pair(t);
      const cplx closed = pre.coeff[l] * suf.coeff[r];
      rep.split_deviation = std::max(rep.split_deviation, std::abs(s.coeff[t] - rho * closed));
      rep.split_deviation_naive =
          std::max(rep.split_deviation_naive, std::abs(s.coeff[t] - closed));
    }
  }

  rep.unit_inner_deviation =
      std::abs(section_inner(xs, ys) -
               oracle::closed_form_unit_section_inner(c_unit, c_other, m, grid.cutoff));

  const FockVector img = witness_image(grid, c_unit, n_units, xs, ys);
  rep.dagger_pipeline = norm(img) * norm(img);
  rep.dagger_closed_form =
      oracle::closed_form_compressed_element(c_unit, c_other, n_units, m, grid.cutoff);

  const FockVector same = witness_image(grid, c_unit, n_units, xs, xs);
  rep.same_unit_value = norm(same) * norm(same);
  rep.same_unit_closed_form =
      oracle::closed_form_compressed_element(c_unit, c_unit, n_units, m, grid.cutoff);
  return rep;
}

Section random_unit_section(const GridSpec& grid, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Section s = zero_section(grid, 1, 1);
  for (auto& comp : s.comp) {
    for (auto& v : comp) {
      v = cplx(gauss(rng), gauss(rng));
    }
  }
  const double n = section_norm(s);
  if (n <= 0.0) {
    throw std::runtime_error("random_unit_section: degenerate draw");
  }
  for (auto& comp : s.comp) {
    for (auto& v : comp) {
      v /= n;
    }
  }
  return s;
}

Section random_composite(const RightDilation& dil, std::mt19937_64& rng, int degree_budget,
                         int free_tail_units) {
  const GridSpec& grid = dil.grid();
  const WindowSpace& win = dil.window();
  const std::size_t wdim = win.dim();
  const int keep_cells =
      free_tail_units < 0
          ? win.window_cells()
          : std::max(0, (win.window_units() - free_tail_units) * grid.cells_per_unit);
  std::vector<int> wdeg(wdim, 0);
  std::vector<unsigned char> ok(wdim, 0);
  win.basis().for_each([&](std::size_t b, const std::vector<int>& occ) {
    wdeg[b] = occ_degree(occ, 0, win.window_cells());
    bool fits = true;
    for (int cell = keep_cells; cell < win.window_cells(); ++cell) {
      if (occ[static_cast<std::size_t>(cell)] != 0) {
        fits = false;
        break;
      }
    }
    ok[b] = fits ? 1 : 0;
  });
  std::normal_distribution<double> gauss(0.0, 1.0);
  Section s = dil.zero_vector();
  for (int j = 0; j < grid.cells_per_unit; ++j) {
    const OccupationBasis& fb = dil.sections().fiber(j);
    for (std::size_t e = 0; e < fb.dim(); ++e) {
      const int de = fb.degree_of(e);
      for (std::size_t b = 0; b < wdim; ++b) {
        if (!ok[b]) {
          continue;
        }
        if (degree_budget >= 0 && de + wdeg[b] > degree_budget) {
          continue;
        }
        s.comp[j][e * wdim + b] = cplx(gauss(rng), gauss(rng));
      }
    }
  }
  const double n = section_norm(s);
  if (n <= 0.0) {
    throw std::runtime_error("random_composite: degenerate draw");
  }
  for (auto& comp : s.comp) {
    for (auto& v : comp) {
      v /= n;
    }
  }
  return s;
}

}  // namespace arvlab
