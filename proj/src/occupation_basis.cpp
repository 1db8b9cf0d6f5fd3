#include "arvlab/occupation_basis.hpp"

#include <algorithm>
#include <cassert>

namespace arvlab {

std::uint64_t binom(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) {
    r = r * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
  }
  return r;
}

std::uint64_t composition_count(int cells, int total) {
  if (total < 0) return 0;
  if (cells == 0) return total == 0 ? 1 : 0;
  return binom(total + cells - 1, cells - 1);
}

OccupationBasis::OccupationBasis(int cells, int cutoff) : cells_(cells), cutoff_(cutoff) {
  if (cells < 0) throw std::invalid_argument("OccupationBasis: negative cell count");
  if (cutoff < 0) throw std::invalid_argument("OccupationBasis: negative cutoff");
  offset_.resize(cutoff + 2);
  offset_[0] = 0;
  for (int d = 0; d <= cutoff; ++d) {
    offset_[d + 1] = offset_[d] + composition_count(cells, d);
  }
}

std::size_t OccupationBasis::dim_up_to(int degree) const {
  if (degree < 0) return 0;
  degree = std::min(degree, cutoff_);
  return offset_[degree + 1];
}

std::size_t OccupationBasis::degree_begin(int degree) const { return offset_[degree]; }

std::size_t OccupationBasis::degree_end(int degree) const { return offset_[degree + 1]; }

int OccupationBasis::degree_of(std::size_t index) const {
  assert(index < dim());
  int d = 0;
  while (offset_[d + 1] <= index) ++d;
  return d;
}

std::size_t OccupationBasis::rank(const std::vector<int>& occ) const {
  if (static_cast<int>(occ.size()) != cells_)
    throw std::invalid_argument("OccupationBasis::rank: wrong cell count");
  int total = 0;
  for (int v : occ) {
    if (v < 0) throw std::invalid_argument("OccupationBasis::rank: negative occupation");
    total += v;
  }
  if (total > cutoff_) throw std::invalid_argument("OccupationBasis::rank: occupation above cutoff");
  // Count same-degree vectors that precede occ: those whose first deviation
  // from occ carries more particles in the earlier cell.
  std::size_t before = 0;
  int rem = total;
  for (int i = 0; i < cells_ && rem > 0; ++i) {
    for (int a = occ[i] + 1; a <= rem; ++a) {
      before += composition_count(cells_ - 1 - i, rem - a);
    }
    rem -= occ[i];
  }
  return offset_[total] + before;
}

std::vector<int> OccupationBasis::occupation(std::size_t index) const {
  if (index >= dim()) throw std::invalid_argument("OccupationBasis::occupation: index out of range");
  int d = degree_of(index);
  std::size_t r = index - offset_[d];
  std::vector<int> occ(cells_, 0);
  int rem = d;
  for (int i = 0; i < cells_ && rem > 0; ++i) {
    for (int a = rem; a >= 0; --a) {
      std::uint64_t block = composition_count(cells_ - 1 - i, rem - a);
      if (r < block) {
        occ[i] = a;
        rem -= a;
        break;
      }
      r -= block;
    }
  }
  return occ;
}

void OccupationBasis::for_each(
    const std::function<void(std::size_t, const std::vector<int>&)>& fn) const {
  std::vector<int> occ(cells_, 0);
  std::size_t index = 0;
  for (int d = 0; d <= cutoff_; ++d) {
    if (composition_count(cells_, d) == 0) continue;
    std::fill(occ.begin(), occ.end(), 0);
    if (cells_ == 0) {
      fn(index++, occ);
      continue;
    }
    occ[0] = d;
    while (true) {
      fn(index++, occ);
      // Successor within the degree: pull one particle out of the last
      // movable cell and restack everything to its right.
      int i = cells_ - 2;
      while (i >= 0 && occ[i] == 0) --i;
      if (i < 0) break;
      int tail = occ[cells_ - 1];
      for (int j = i + 1; j < cells_ - 1; ++j) tail += occ[j];
      occ[i] -= 1;
      for (int j = i + 1; j < cells_; ++j) occ[j] = 0;
      occ[i + 1] = tail + 1;
    }
  }
}

FilteredTensorBasis::FilteredTensorBasis(const OccupationBasis& left, const OccupationBasis& right)
    : left_(left), right_(right), joint_(left.cells() + right.cells(), left.cutoff()) {
  if (left.cutoff() != right.cutoff())
    throw std::invalid_argument("FilteredTensorBasis: factor cutoffs differ");
  pair_.resize(joint_.dim());
  const int lc = left_.cells();
  std::vector<int> locc(lc), rocc(right_.cells());
  joint_.for_each([&](std::size_t t, const std::vector<int>& occ) {
    std::copy(occ.begin(), occ.begin() + lc, locc.begin());
    std::copy(occ.begin() + lc, occ.end(), rocc.begin());
    pair_[t] = {static_cast<std::uint32_t>(left_.rank(locc)),
                static_cast<std::uint32_t>(right_.rank(rocc))};
  });
}

}  // namespace arvlab
