#pragma once

#include <string>
#include <vector>

#include "beurling/measure.hpp"

namespace beurling {

/// A function sampled at x = e^{t_j}, t_1 < ... < t_J.
struct CheckpointSeries {
  std::vector<double> logPoints;
  std::vector<double> values;
  std::string label;

  std::size_t size() const noexcept { return values.size(); }
  /// Throws InvalidArgument unless the points increase strictly and the
  /// value count matches.
  void validate() const;
};

/// Checkpoint ladder t = first, first + step, ..., last.
std::vector<double> ladder(double first, double last, double step);

/// Weight w(x) = (log x)^logPower * x^{-xPower}; all named ratios are
/// instances (1/x, log x/x, log^b x/x, 1/log^eps x, ...).
struct Weight {
  double logPower = 0.0;
  double xPower = 0.0;

  static Weight one() { return {0.0, 0.0}; }
  static Weight invX() { return {0.0, 1.0}; }
  static Weight logOverX() { return {1.0, 1.0}; }
  static Weight logPowOverX(double b) { return {b, 1.0}; }
  static Weight logPow(double b) { return {b, 0.0}; }

  /// w(e^t).
  double atLog(double t) const;
  std::string describe() const;
};

/// f(x) = A(x) w(x) at each checkpoint.
CheckpointSeries sampleRatio(const MeasureD& a, const Weight& w, const std::vector<double>& logPoints,
                             std::string label = {});

/// f(x) = w(x) * int_{[1,x]} dA(u)/u at each checkpoint.
CheckpointSeries sampleHarmonic(const MeasureD& a, const Weight& w,
                                const std::vector<double>& logPoints, std::string label = {});

/// Outcome of a finite-checkpoint proxy for an o(.) or O(.) statement. A
/// pass is evidence at the sampled points only, never a proof.
struct TrendVerdict {
  bool passed = false;
  std::string criterion;
  std::vector<double> ratios;  ///< |v_{j+1}| / |v_j| over the inspected tail
  std::string detail;
};

/// Decay proxy: the last tailK values strictly decrease in absolute value
/// and the final |value| is below half the largest |value| of the series.
/// Invariant under multiplication by a positive constant.
TrendVerdict checkDecay(const CheckpointSeries& series, std::size_t tailK = 5);

/// Growth proxy: the last tailK values strictly increase and the final value
/// exceeds factor times the first inspected value.
TrendVerdict checkGrowth(const CheckpointSeries& series, std::size_t tailK, double factor);

/// Boundedness proxy: fails only when the last tailK values strictly
/// increase (a sustained upward trend).
TrendVerdict checkBounded(const CheckpointSeries& series, std::size_t tailK = 5);

/// Convergence proxy for partial integrals: over the last tailK increments,
/// |increment| strictly decreases until it reaches rounding level (64 eps of
/// the partials, then counted as zero and required to stay there), and the
/// final increment is below half the largest.
TrendVerdict checkConvergent(const CheckpointSeries& partials, std::size_t tailK = 5);

}  // namespace beurling
