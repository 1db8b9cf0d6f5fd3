#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "arvlab/types.hpp"

namespace arvlab {

// Exact binomial coefficient; small k only (k <= cutoff + a few).
std::uint64_t binom(int n, int k);

// Number of occupation vectors of total degree `total` on `cells` cells,
// i.e. weak compositions of `total` into `cells` parts.
std::uint64_t composition_count(int cells, int total);

// Orthonormal occupation-number basis of the symmetric Fock space over
// `cells` one-particle modes, truncated at total occupation <= cutoff.
//
// Ordering contract: total occupation ascending; within a fixed total the
// particle-position multisets are compared left to right, so index 0 is the
// vacuum and index 1 (when cells >= 1) puts one particle in the leftmost
// cell.  On occupation tuples this is descending lexicographic order.
// The ordering depends only on relative cell positions, so translates of an
// interval share coefficient layouts.
class OccupationBasis {
 public:
  OccupationBasis(int cells, int cutoff);

  int cells() const { return cells_; }
  int cutoff() const { return cutoff_; }
  std::size_t dim() const { return offset_.back(); }
  // Number of basis vectors with total occupation <= degree.
  std::size_t dim_up_to(int degree) const;
  // Degree block [first, last) for the given total occupation.
  std::size_t degree_begin(int degree) const;
  std::size_t degree_end(int degree) const;
  int degree_of(std::size_t index) const;

  std::size_t rank(const std::vector<int>& occ) const;
  std::vector<int> occupation(std::size_t index) const;

  // Visits (index, occupation) in basis order without re-ranking.
  void for_each(const std::function<void(std::size_t, const std::vector<int>&)>& fn) const;

 private:
  int cells_;
  int cutoff_;
  std::vector<std::size_t> offset_;  // offset_[d] = dim of degrees < d
};

// Basis of E_left (x) E_right kept after the total-occupation filter.  Pairs
// (left index, right index) with deg_left + deg_right <= cutoff are listed
// in the order of their concatenated occupation vectors, which makes the
// pairing map a bijection onto the occupation basis of the joined interval
// and the associated unitary a pure reindexing.
class FilteredTensorBasis {
 public:
  FilteredTensorBasis(const OccupationBasis& left, const OccupationBasis& right);

  const OccupationBasis& left() const { return left_; }
  const OccupationBasis& right() const { return right_; }
  const OccupationBasis& joint() const { return joint_; }
  std::size_t dim() const { return pair_.size(); }
  // Pair of factor indices whose concatenation is joint basis vector t.
  std::pair<std::uint32_t, std::uint32_t> pair(std::size_t t) const { return pair_[t]; }

 private:
  OccupationBasis left_;
  OccupationBasis right_;
  OccupationBasis joint_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pair_;
};

}  // namespace arvlab
