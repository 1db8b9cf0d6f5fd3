#include "doctest.h"

#include <vector>

#include "arvlab/occupation_basis.hpp"

using namespace arvlab;

TEST_CASE("binomials and composition counts") {
  CHECK(binom(0, 0) == 1);
  CHECK(binom(5, 2) == 10);
  CHECK(binom(10, 3) == 120);
  CHECK(binom(3, 5) == 0);
  CHECK(composition_count(3, 2) == 6);   // weak compositions of 2 into 3 parts
  CHECK(composition_count(1, 4) == 1);
  CHECK(composition_count(4, 0) == 1);
}

TEST_CASE("dimension is the cumulative composition count") {
  for (int cells = 1; cells <= 6; ++cells) {
    for (int cutoff = 1; cutoff <= 4; ++cutoff) {
      const OccupationBasis b(cells, cutoff);
      std::size_t expect = 0;
      for (int k = 0; k <= cutoff; ++k) {
        expect += composition_count(cells, k);
      }
      CHECK(b.dim() == expect);
      CHECK(b.dim_up_to(cutoff) == expect);
      CHECK(b.degree_begin(0) == 0);
      CHECK(b.degree_end(cutoff) == expect);
    }
  }
  CHECK(OccupationBasis(0, 2).dim() == 1);  // empty interval: just the scalar
}

TEST_CASE("ordering: degree ascending, positions left to right") {
  const OccupationBasis b(3, 2);
  const std::vector<std::vector<int>> expected = {
      {0, 0, 0},
      {1, 0, 0}, {0, 1, 0}, {0, 0, 1},
      {2, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2},
  };
  REQUIRE(b.dim() == expected.size());
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(b.occupation(i) == expected[i]);
    CHECK(b.rank(expected[i]) == i);
  }
  CHECK(b.degree_of(0) == 0);
  CHECK(b.degree_of(1) == 1);
  CHECK(b.degree_of(4) == 2);
  CHECK(b.degree_begin(2) == 4);
  CHECK(b.degree_end(1) == 4);
}

TEST_CASE("rank and occupation invert each other") {
  const OccupationBasis b(4, 3);
  for (std::size_t i = 0; i < b.dim(); ++i) {
    CHECK(b.rank(b.occupation(i)) == i);
  }
  std::size_t visited = 0;
  b.for_each([&](std::size_t i, const std::vector<int>& occ) {
    CHECK(occ == b.occupation(i));
    ++visited;
  });
  CHECK(visited == b.dim());
}

TEST_CASE("filtered tensor pairs enumerate the joint basis") {
  const OccupationBasis left(2, 2);
  const OccupationBasis right(3, 2);
  const FilteredTensorBasis ftb(left, right);
  CHECK(ftb.dim() == ftb.joint().dim());
  for (std::size_t t = 0; t < ftb.dim(); ++t) {
    const auto [l, r] = ftb.pair(t);
    const std::vector<int> lo = left.occupation(l);
    const std::vector<int> ro = right.occupation(r);
    std::vector<int> cat = lo;
    cat.insert(cat.end(), ro.begin(), ro.end());
    CHECK(ftb.joint().rank(cat) == t);
    CHECK(left.degree_of(l) + right.degree_of(r) <= 2);
  }
}

TEST_CASE("filtered tensor with an empty factor is the identity pairing") {
  const OccupationBasis left(0, 2);
  const OccupationBasis right(3, 2);
  const FilteredTensorBasis ftb(left, right);
  REQUIRE(ftb.dim() == right.dim());
  for (std::size_t t = 0; t < ftb.dim(); ++t) {
    const auto [l, r] = ftb.pair(t);
    CHECK(l == 0);
    CHECK(r == t);
  }
}
