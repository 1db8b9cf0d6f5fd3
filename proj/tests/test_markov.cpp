#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "arvlab/dilation.hpp"
#include "arvlab/direct_integral.hpp"
#include "arvlab/linalg.hpp"
#include "arvlab/markov.hpp"
#include "arvlab/oracles.hpp"
#include "arvlab/product_system.hpp"

using namespace arvlab;

TEST_CASE("unit powers carry the truncated product norm") {
  const GridSpec grid{4, 2};
  const cplx c(1.0, 0.0);
  const FockVector p0 = unit_power(grid, c, 0);
  CHECK(p0.coeff.size() == 1);
  CHECK(p0.coeff[0] == cplx(1.0, 0.0));

  const FockVector p1 = unit_power(grid, c, 1);
  const FockVector u1 = unit_vector(grid, c, 4);
  for (std::size_t i = 0; i < p1.coeff.size(); ++i) {
    CHECK(p1.coeff[i] == u1.coeff[i]);
  }

  for (int n : {2, 3}) {
    const FockVector pn = unit_power(grid, c, n);
    CHECK(norm(pn) == doctest::Approx(oracle::unit_power_norm(c, n, 2)).epsilon(1e-13));
    // Colinear with the long unit vector; the angle defect equals the
    // factorization defect of the oracle.
    const FockVector un = unit_vector(grid, c, n * 4);
    CHECK(std::abs(inner(un, pn)) == doctest::Approx(norm(pn)).epsilon(1e-12));
  }
  const FockVector p2 = unit_power(grid, c, 2);
  const FockVector u2 = unit_vector(grid, c, 8);
  FockVector diff = u2;
  for (std::size_t i = 0; i < diff.coeff.size(); ++i) {
    diff.coeff[i] -= p2.coeff[i];
  }
  CHECK(norm(diff) ==
        doctest::Approx(oracle::unit_factorization_defect(c, 1.0, 1.0, 2)).epsilon(1e-12));
}

TEST_CASE("compression factor blocks: structure and isometry defects") {
  const GridSpec grid{4, 2};

  // Zero time: identity on every fiber.
  const StinespringBlocks g0 = stinespring_blocks(grid, cplx(1.0, 0.0), 0);
  CHECK(g0.en_dim == 1);
  for (int j = 0; j < 4; ++j) {
    CHECK((g0.block[j] - Eigen::MatrixXcd::Identity(g0.block[j].rows(), g0.block[j].cols()))
              .norm() == 0.0);
  }

  // Vacuum unit: exact isometries at every power.
  for (int n : {1, 2}) {
    const StinespringBlocks g = stinespring_blocks(grid, cplx(0.0, 0.0), n);
    CHECK(isometry_defect(g) <= 1e-13);
    CHECK(stinespring_isometry_defect(grid, cplx(0.0, 0.0), n) == 0.0);
  }

  // Coherent unit: the defect is the truncated-series bound, exactly.
  const cplx c(1.0, 0.0);
  for (int n : {1, 2}) {
    const StinespringBlocks g = stinespring_blocks(grid, c, n);
    const double measured = isometry_defect(g);
    CHECK(measured == doctest::Approx(oracle::stinespring_defect_bound(c, n, 2)).epsilon(1e-12));
    CHECK(measured ==
          doctest::Approx(stinespring_isometry_defect(grid, c, n)).epsilon(1e-12));
  }
}

TEST_CASE("distinct block columns never collide") {
  // Columns of one fiber block have disjoint occupation prefixes, so the
  // column Gram matrix is diagonal with no floating-point cancellation.
  const GridSpec grid{4, 2};
  const StinespringBlocks g = stinespring_blocks(grid, cplx(0.6, -0.8), 1);
  for (const Eigen::MatrixXcd& b : g.block) {
    const Eigen::MatrixXcd gram = b.adjoint() * b;
    for (Eigen::Index r = 0; r < gram.rows(); ++r) {
      for (Eigen::Index col = 0; col < gram.cols(); ++col) {
        if (r != col) {
          CHECK(gram(r, col) == cplx(0.0, 0.0));
        }
      }
    }
  }
}

TEST_CASE("compressed map is unital and a semigroup for the vacuum unit") {
  const GridSpec grid{4, 2};
  const cplx c(0.0, 0.0);
  const StinespringBlocks g1 = stinespring_blocks(grid, c, 1);
  const StinespringBlocks g2 = stinespring_blocks(grid, c, 2);
  const SectionSpace space(grid);
  const Eigen::Index n = static_cast<Eigen::Index>(space.dim());
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
  CHECK(operator_norm(compressed_apply(g1, space, id) - id) <= 1e-13);

  std::mt19937_64 rng(89);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXcd a(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
      for (Eigen::Index col = 0; col < n; ++col) {
        a(r, col) = cplx(gauss(rng), gauss(rng));
      }
    }
    const Eigen::MatrixXcd b = 0.5 * (a + a.adjoint());
    const Eigen::MatrixXcd two = compressed_apply(g2, space, b);
    const Eigen::MatrixXcd twice = compressed_apply(g1, space, compressed_apply(g1, space, b));
    CHECK(operator_norm(two - twice) <= 1e-11 * operator_norm(b));
  }
}

TEST_CASE("witness contraction tables match a column-by-column build") {
  const GridSpec grid{4, 2};
  const cplx c(1.0, 0.0);
  const FockVector omega1 = unit_vector(grid, c, 4);
  for (int k : {1, 2}) {
    const WitnessContraction v(grid, omega1, k);
    const Eigen::MatrixXcd dense = v.dense();
    // Columns via apply on coordinate vectors.
    for (std::size_t i = 0; i < v.domain_dim(); ++i) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(v.domain_dim()));
      e(static_cast<Eigen::Index>(i)) = 1.0;
      const Eigen::VectorXcd col = v.apply(e);
      CHECK((col - dense.col(static_cast<Eigen::Index>(i))).norm() <= 1e-14);
    }
    // Adjointness.
    std::mt19937_64 rng(97);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd y(static_cast<Eigen::Index>(v.domain_dim()));
    Eigen::VectorXcd z(static_cast<Eigen::Index>(v.range_dim()));
    for (Eigen::Index i = 0; i < y.size(); ++i) y(i) = cplx(gauss(rng), gauss(rng));
    for (Eigen::Index i = 0; i < z.size(); ++i) z(i) = cplx(gauss(rng), gauss(rng));
    CHECK(std::abs(z.dot(v.apply(y)) - v.apply_adjoint(z).dot(y)) <= 1e-12);
  }
}

TEST_CASE("witness contraction agrees with the generic pipeline image") {
  const GridSpec grid{4, 2};
  std::mt19937_64 rng(101);
  for (const cplx c : {cplx(0.0, 0.0), cplx(1.0, 0.0), cplx(0.5, 0.5)}) {
    const FockVector omega1 = unit_vector(grid, c, 4);
    for (int k : {1, 2}) {
      const WitnessContraction v(grid, omega1, k);
      const Section x = onb_section(grid, k);
      const Section y = random_unit_section(grid, rng);
      const Eigen::VectorXcd via_tables = v.apply_section(y);
      const FockVector via_pipeline = witness_image(grid, c, 1, x, y);
      REQUIRE(via_pipeline.coeff.size() == static_cast<std::size_t>(via_tables.size()));
      for (std::size_t i = 0; i < via_pipeline.coeff.size(); ++i) {
        CHECK(std::abs(via_pipeline.coeff[i] - via_tables(static_cast<Eigen::Index>(i))) <=
              1e-13);
      }
    }
  }
}

TEST_CASE("norm bound, matrix elements, and projection failure at a coherent unit") {
  const GridSpec grid{4, 2};
  const TheoremReport rep = verify_theorem(grid, cplx(1.0, 0.0), 1, 3, 25, 12345);
  CHECK(rep.a_norm == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rep.m2_grid ==
        doctest::Approx(oracle::closed_form_overlap_mass(cplx(1.0, 0.0), 4, 2)).epsilon(1e-12));
  CHECK(rep.t1a_norm > 0.1);
  CHECK(rep.norm_excess <= 1e-9);
  CHECK(rep.dagger_samples == 25);
  CHECK(rep.dagger_deviation <= 1e-9);
  CHECK(rep.z1_excess <= 1e-9);
  CHECK(rep.not_projection);
  CHECK_FALSE(rep.used_power_iteration);
}

TEST_CASE("vacuum unit at the second basis index compresses to zero") {
  const GridSpec grid{4, 2};
  const TheoremReport rep = verify_theorem(grid, cplx(0.0, 0.0), 2, 3, 10, 7);
  CHECK(rep.m2_grid == 0.0);
  CHECK(rep.t1a_norm <= 1e-14);
  CHECK(rep.dagger_deviation <= 1e-14);
  CHECK(rep.not_projection);
}

TEST_CASE("power iteration reproduces the dense norm") {
  const GridSpec grid{4, 3};
  const FockVector omega1 = unit_vector(grid, cplx(1.0, 0.0), 4);
  const WitnessContraction v(grid, omega1, 1);
  const double dense = operator_norm(v.dense());
  const auto gram = [&v](const Eigen::VectorXcd& in, Eigen::VectorXcd& out) {
    out = v.apply_gram(in);
  };
  const PowerIterationResult pi = power_iteration(v.range_dim(), gram, 31337);
  CHECK(pi.converged);
  CHECK(pi.value == doctest::Approx(dense * dense).epsilon(1e-9));
  CHECK(pi.value <= dense * dense + 1e-12);  // Rayleigh quotients never overshoot
}

TEST_CASE("dilation path reproduces the witness norm for the vacuum unit") {
  const GridSpec grid{4, 2};
  const RightDilation dil(grid, 2);
  const FockVector omega1 = unit_vector(grid, cplx(0.0, 0.0), 4);
  const WitnessContraction v(grid, omega1, 1);
  const Section x = onb_section(grid, 1);
  std::mt19937_64 rng(103);
  for (int trial = 0; trial < 5; ++trial) {
    const Section y = random_unit_section(grid, rng);
    const double lhs = dagger_via_dilation(dil, 1, x, y);
    const double rhs = v.apply_section(y).squaredNorm();
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("Choi restriction is positive semidefinite") {
  const GridSpec grid{4, 2};
  const SectionSpace space(grid);
  for (const cplx c : {cplx(0.0, 0.0), cplx(1.0, 0.0)}) {
    const StinespringBlocks g = stinespring_blocks(grid, c, 1);
    const double min_eig = choi_min_eigenvalue(g, space, 12);
    CHECK(min_eig >= -1e-12);
  }
  const StinespringBlocks g = stinespring_blocks(grid, cplx(1.0, 0.0), 1);
  CHECK_THROWS_AS(choi_min_eigenvalue(g, space, 0), std::invalid_argument);
  CHECK_THROWS_AS(choi_min_eigenvalue(g, space, space.dim() + 1), std::invalid_argument);
}

TEST_CASE("witness image requires at least one time unit") {
  const GridSpec grid{4, 2};
  const Section x = onb_section(grid, 1);
  CHECK_THROWS_AS(witness_image(grid, cplx(0.0, 0.0), 0, x, x), std::invalid_argument);
}

TEST_CASE("observation crosscheck: vacuum unit is exact") {
  const GridSpec grid{4, 2};
  const ObservationReport rep = observation_crosscheck(grid, cplx(0.0, 0.0), cplx(1.0, 0.0), 1);
  CHECK(rep.split_deviation == 0.0);
  CHECK(rep.unit_inner_deviation <= 1e-14);
  CHECK(std::abs(rep.dagger_pipeline - rep.dagger_closed_form) <= 1e-12);
  CHECK(rep.same_unit_value == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(rep.same_unit_closed_form == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("observation crosscheck: coherent split is exact after normalization") {
  const GridSpec grid{4, 2};
  for (int n : {1, 2}) {
    const ObservationReport rep =
        observation_crosscheck(grid, cplx(1.0, 0.0), cplx(0.0, 0.5), n);
    CHECK(rep.split_deviation <= 1e-12);
    CHECK(rep.split_deviation_naive > 1e-3);  // the ratio is what makes it exact
    CHECK(rep.unit_inner_deviation <= 1e-13);
    CHECK(rep.same_unit_value <= 1.0 + 1e-12);
    CHECK(rep.same_unit_value > 0.5);
  }
}

TEST_CASE("shifted compression on degree-limited samples") {
  const GridSpec grid{2, 3};
  const RightDilation dil(grid, 3);
  const IntertwineReport rep = shifted_compression_check(dil, 1, 1, 3, 2, 271828, 1);
  CHECK(rep.max_budget_deviation <= 1e-8);
  CHECK(rep.max_free_deviation < 1.0);  // reported, truncation-limited

  // alpha = 0 turns both sides into the same compression.
  const IntertwineReport trivial = shifted_compression_check(dil, 0, 1, 2, 2, 31415, 1);
  CHECK(trivial.max_budget_deviation <= 1e-10);
}

TEST_CASE("random composites respect budget and tail constraints") {
  const GridSpec grid{2, 2};
  const RightDilation dil(grid, 3);
  std::mt19937_64 rng(107);
  const Section s = random_composite(dil, rng, 1, 1);
  CHECK(section_norm(s) == doctest::Approx(1.0).epsilon(1e-13));
  const std::size_t wdim = dil.window_dim();
  for (int j = 0; j < 2; ++j) {
    const OccupationBasis& fb = dil.sections().fiber(j);
    for (std::size_t e = 0; e < fb.dim(); ++e) {
      for (std::size_t b = 0; b < wdim; ++b) {
        const cplx val = s.comp[j][e * wdim + b];
        if (val == cplx(0.0, 0.0)) {
          continue;
        }
        const std::vector<int> occ = dil.window().basis().occupation(b);
        int wdeg = 0;
        for (int cell = 0; cell < dil.window().window_cells(); ++cell) {
          wdeg += occ[cell];
        }
        CHECK(fb.degree_of(e) + wdeg <= 1);
        CHECK(occ[4] == 0);  // last unit kept free
        CHECK(occ[5] == 0);
      }
    }
  }
}
