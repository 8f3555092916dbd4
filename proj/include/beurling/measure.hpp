#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include <Eigen/Core>

#include "beurling/detail/summation.hpp"
#include "beurling/errors.hpp"
#include "beurling/log_grid.hpp"

namespace beurling {

/// Signed measure on [1, e^{(n-1)h}] approximated by point masses at the
/// lattice points u_k = e^{kh}. Coefficient 0 is the mass at u = 1 exactly,
/// so the convolution identity is (1, 0, 0, ...).
///
/// Values are immutable once built; every operation returns a new measure.
template <typename Scalar_>
class Measure {
 public:
  using Scalar = Scalar_;
  using Index = Eigen::Index;
  using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  /// Zero measure.
  explicit Measure(const LogGrid& grid) : grid_(grid), coeffs_(Vector::Zero(grid.n())) {}

  Measure(const LogGrid& grid, Vector coeffs) : grid_(grid), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != grid_.n()) {
      throw InvalidArgument("Measure: expected " + std::to_string(grid_.n()) +
                            " coefficients, got " + std::to_string(coeffs_.size()));
    }
    for (Index k = 0; k < coeffs_.size(); ++k) {
      if (!std::isfinite(static_cast<double>(coeffs_[k]))) {
        throw Overflow("Measure: non-finite coefficient at index " + std::to_string(k), k);
      }
    }
  }

  static Measure delta(const LogGrid& grid, Scalar mass = Scalar(1)) {
    return atom(grid, 0, mass);
  }

  static Measure atom(const LogGrid& grid, Index k, Scalar mass) {
    if (k < 0 || k >= grid.n()) {
      throw OutOfRange("Measure::atom: index " + std::to_string(k) + " outside grid");
    }
    Vector c = Vector::Zero(grid.n());
    c[k] = mass;
    return Measure(grid, std::move(c));
  }

  const LogGrid& grid() const noexcept { return grid_; }
  const Vector& coeffs() const noexcept { return coeffs_; }
  Index size() const noexcept { return coeffs_.size(); }
  Scalar operator[](Index k) const { return coeffs_[k]; }

  Measure operator-() const { return Measure(grid_, Vector(-coeffs_)); }

  friend Measure operator+(const Measure& a, const Measure& b) {
    requireSameGrid(a.grid_, b.grid_, "operator+");
    return Measure(a.grid_, Vector(a.coeffs_ + b.coeffs_));
  }
  friend Measure operator-(const Measure& a, const Measure& b) {
    requireSameGrid(a.grid_, b.grid_, "operator-");
    return Measure(a.grid_, Vector(a.coeffs_ - b.coeffs_));
  }
  friend Measure operator*(Scalar s, const Measure& a) {
    return Measure(a.grid_, Vector(s * a.coeffs_));
  }
  friend Measure operator*(const Measure& a, Scalar s) { return s * a; }

 private:
  LogGrid grid_;
  Vector coeffs_;
};

using MeasureD = Measure<double>;

/// Lattice projection of the variation measure |dA|.
template <typename Scalar>
Measure<Scalar> variation(const Measure<Scalar>& a) {
  return Measure<Scalar>(a.grid(), a.coeffs().cwiseAbs());
}

/// Multiplication by log u: coefficient k becomes (k h) c_k.
template <typename Scalar>
Measure<Scalar> applyL(const Measure<Scalar>& a) {
  const auto& g = a.grid();
  typename Measure<Scalar>::Vector out(a.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    out[k] = Scalar(g.logPoint(k)) * a[k];
  }
  return Measure<Scalar>(g, std::move(out));
}

/// u^{-s} dA(u). The map is a homomorphism of the convolution algebra, so
/// exp*, inverses and convolutions commute with it.
template <typename Scalar>
Measure<Scalar> scaleByPower(const Measure<Scalar>& a, double s) {
  const auto& g = a.grid();
  typename Measure<Scalar>::Vector out(a.size());
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    out[k] = a[k] * Scalar(std::exp(-s * g.logPoint(k)));
  }
  return Measure<Scalar>(g, std::move(out));
}

namespace detail {

template <typename Scalar>
Eigen::Index lastIndexAtLog(const Measure<Scalar>& a, double t, const char* op) {
  const auto& g = a.grid();
  if (!(t < g.logLimit())) {
    throw OutOfRange(std::string(op) + ": log x = " + std::to_string(t) +
                     " is beyond the grid end " + std::to_string(g.logLimit()));
  }
  return std::min<Eigen::Index>(g.floorIndex(t), g.n() - 1);
}

}  // namespace detail

/// A(x) = sum of c_k over k h <= t, with t = log x (right-continuous).
template <typename Scalar>
Scalar primitiveAtLog(const Measure<Scalar>& a, double t) {
  const Eigen::Index last = detail::lastIndexAtLog(a, t, "primitive");
  detail::CompensatedSum<Scalar> sum;
  for (Eigen::Index k = 0; k <= last; ++k) sum.add(a[k]);
  return sum.value();
}

/// A(x) = int_{[1,x]} dA. Zero for x < 1.
template <typename Scalar>
Scalar primitive(const Measure<Scalar>& a, double x) {
  if (!(x > 0.0)) throw InvalidArgument("primitive: x must be positive");
  return primitiveAtLog(a, std::log(x));
}

/// int_{[1,x]} dA(u)/u = sum of c_k e^{-kh} over k h <= log x.
template <typename Scalar>
Scalar harmonicPrimitiveAtLog(const Measure<Scalar>& a, double t) {
  const Eigen::Index last = detail::lastIndexAtLog(a, t, "harmonicPrimitive");
  const auto& g = a.grid();
  detail::CompensatedSum<Scalar> sum;
  for (Eigen::Index k = 0; k <= last; ++k) sum.add(a[k] * Scalar(std::exp(-g.logPoint(k))));
  return sum.value();
}

template <typename Scalar>
Scalar harmonicPrimitive(const Measure<Scalar>& a, double x) {
  if (!(x > 0.0)) throw InvalidArgument("harmonicPrimitive: x must be positive");
  return harmonicPrimitiveAtLog(a, std::log(x));
}

/// All partial sums A(e^{kh}), k = 0 .. n-1, in one pass.
template <typename Scalar>
typename Measure<Scalar>::Vector cumulative(const Measure<Scalar>& a) {
  typename Measure<Scalar>::Vector out(a.size());
  detail::CompensatedSum<Scalar> sum;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    sum.add(a[k]);
    out[k] = sum.value();
  }
  return out;
}

/// Truncated real Mellin transform sum_k c_k e^{-sigma k h}.
///
/// The sum stops at the last lattice point e^{(n-1)h}: mass of the true
/// measure beyond the grid end is not seen, so callers must bound the tail
/// themselves (for a density growing like u^{1-0} the neglected part is of
/// order exp(-(sigma-1)(n-1)h)).
template <typename Scalar>
Scalar mellin(const Measure<Scalar>& a, double sigma) {
  const auto& g = a.grid();
  detail::CompensatedSum<Scalar> sum;
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    sum.add(a[k] * Scalar(std::exp(-sigma * g.logPoint(k))));
  }
  return sum.value();
}

/// Largest coefficient-wise |x_k - ref_k| / scale_k. Scale entries that are
/// exactly zero only accept an exact match. Used to state "relative"
/// tolerances for signed results against an absolute-value envelope.
template <typename Scalar>
double maxScaledDeviation(const Measure<Scalar>& x, const Measure<Scalar>& ref,
                          const Measure<Scalar>& scale) {
  requireSameGrid(x.grid(), ref.grid(), "maxScaledDeviation");
  requireSameGrid(x.grid(), scale.grid(), "maxScaledDeviation");
  double worst = 0.0;
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double diff = std::abs(static_cast<double>(x[k] - ref[k]));
    if (diff == 0.0) continue;
    const double s = std::abs(static_cast<double>(scale[k]));
    if (s == 0.0) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, diff / s);
  }
  return worst;
}

/// Relative deviation against |ref| itself.
template <typename Scalar>
double maxRelativeDeviation(const Measure<Scalar>& x, const Measure<Scalar>& ref) {
  return maxScaledDeviation(x, ref, variation(ref));
}

}  // namespace beurling
