#pragma once

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "beurling/errors.hpp"

namespace beurling {

/// Logarithmic lattice u_k = exp(k h), k = 0 .. n-1.
///
/// A measure on the grid lives on [1, e^{(n-1)h}]; products whose index
/// reaches n fall off the end of the truncated algebra.
class LogGrid {
 public:
  using Index = Eigen::Index;

  LogGrid(double h, Index n) : h_(h), n_(n) {
    if (!(h > 0.0) || !std::isfinite(h)) {
      throw InvalidArgument("LogGrid: step h must be positive and finite, got " +
                            std::to_string(h));
    }
    if (n < 1) {
      throw InvalidArgument("LogGrid: size n must be at least 1, got " + std::to_string(n));
    }
  }

  /// Grid with step chosen so that the last lattice point is log x = logEnd.
  static LogGrid covering(double logEnd, Index n) {
    if (n < 2) throw InvalidArgument("LogGrid::covering needs n >= 2");
    return LogGrid(logEnd / static_cast<double>(n - 1), n);
  }

  double h() const noexcept { return h_; }
  Index n() const noexcept { return n_; }

  /// log u_k.
  double logPoint(Index k) const noexcept { return static_cast<double>(k) * h_; }
  /// log of the last lattice point.
  double logEnd() const noexcept { return logPoint(n_ - 1); }
  /// Exclusive upper limit of the truncated algebra, in log u.
  double logLimit() const noexcept { return static_cast<double>(n_) * h_; }

  /// Largest k with k h <= t, tolerating rounding in t of a few ulps of the
  /// index. Returns -1 for t below zero.
  Index floorIndex(double t) const noexcept {
    if (t < 0.0) return -1;
    return static_cast<Index>(std::floor(t / h_ + 1e-9));
  }

  /// Nearest lattice index in log scale (atom snapping).
  Index nearestIndex(double t) const noexcept {
    return static_cast<Index>(std::llround(t / h_));
  }

  friend bool operator==(const LogGrid& a, const LogGrid& b) noexcept {
    return a.h_ == b.h_ && a.n_ == b.n_;
  }
  friend bool operator!=(const LogGrid& a, const LogGrid& b) noexcept { return !(a == b); }

 private:
  double h_;
  Index n_;
};

inline void requireSameGrid(const LogGrid& a, const LogGrid& b, const char* op) {
  if (a != b) {
    throw GridMismatch(std::string(op) + ": incompatible grids (h=" + std::to_string(a.h()) +
                       ", n=" + std::to_string(a.n()) + ") vs (h=" + std::to_string(b.h()) +
                       ", n=" + std::to_string(b.n()) + ")");
  }
}

}  // namespace beurling
