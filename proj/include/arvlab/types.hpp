#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace arvlab {

using cplx = std::complex<double>;

// Thrown when a shift would push occupation past the end of the finite
// dilation window.  Callers that cannot guarantee room must either enlarge
// the window or treat this as a hard configuration error.
class TruncationOverflow : public std::runtime_error {
 public:
  explicit TruncationOverflow(const std::string& what) : std::runtime_error(what) {}
};

// Uniform grid on the time axis.  One time unit is split into
// cells_per_unit cells of width h = 1/cells_per_unit; cutoff bounds the
// total particle number kept in every Fock space built over this grid.
struct GridSpec {
  int cells_per_unit = 8;
  int cutoff = 2;

  double h() const { return 1.0 / cells_per_unit; }

  void validate() const {
    if (cells_per_unit < 1) throw std::invalid_argument("GridSpec: cells_per_unit must be >= 1");
    if (cutoff < 1) throw std::invalid_argument("GridSpec: cutoff must be >= 1");
  }

  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Half-open run of cells [start_cell, end_cell).  Empty intervals are legal;
// the Fock space over an empty interval is one-dimensional (vacuum only).
struct Interval {
  int start_cell = 0;
  int end_cell = 0;

  int cells() const { return end_cell - start_cell; }
  bool empty() const { return cells() == 0; }

  void validate() const {
    if (end_cell < start_cell) throw std::invalid_argument("Interval: end_cell < start_cell");
  }

  friend bool operator==(const Interval&, const Interval&) = default;
};

}  // namespace arvlab
