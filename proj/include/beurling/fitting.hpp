#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "beurling/checkpoint_series.hpp"
#include "beurling/measure.hpp"

namespace beurling {

inline constexpr double kEulerGamma = 0.57721566490153286061;

/// Fitted constants of an asymptotic model together with the rule that
/// decides `passed`.
struct FitReport {
  std::string modelName;
  std::vector<std::pair<std::string, double>> constants;
  double residualRMS = 0.0;
  bool passed = true;
  std::string criterion;
  std::string notes;

  /// Throws InvalidArgument for an unknown name.
  double constant(const std::string& name) const;
};

/// sigma = 1 + offset for `count` offsets log-spaced in [minOffset, maxOffset],
/// listed with sigma decreasing towards 1.
std::vector<double> logSpacedSigmas(double minOffset, double maxOffset, int count);

/// Mellin values of a measure at the sigmas that survive the truncation-tail
/// rule (sigma - 1) * logEnd >= tailFactor, which keeps exp(-(sigma-1) logEnd)
/// below 1e-6 for the default factor 14.
///
/// powerWeight = s declares that the measure stores u^{-s} dA: the Mellin
/// transform of dA at sigma is then read off at sigma - s.
struct MellinSample {
  std::vector<double> sigmas;
  std::vector<double> values;
  std::size_t clipped = 0;
};

MellinSample sampleMellin(const MeasureD& a, const std::vector<double>& sigmas,
                          double powerWeight = 0.0, double tailFactor = 14.0);

struct MellinFitOptions {
  double powerWeight = 0.0;
  double tailFactor = 14.0;
  std::optional<double> expectedAlpha;
  double alphaTolerance = 0.02;
};

/// Least squares for  alpha log log(1/(sigma-1)) + c1 + c2 / log(1/(sigma-1)).
FitReport fitMellinModel(const std::vector<double>& sigmas, const std::vector<double>& values,
                         std::optional<double> expectedAlpha = std::nullopt,
                         double alphaTolerance = 0.02);

/// sampleMellin followed by fitMellinModel; records the clipping in notes.
FitReport fitMellinExpansion(const MeasureD& a, const std::vector<double>& sigmas,
                             const MellinFitOptions& options = {});

/// Least squares for  b1 log(1/(sigma-1)) + b2.
FitReport fitMellinLogModel(const std::vector<double>& sigmas, const std::vector<double>& values);

/// Least squares for  b1 log log x + beta  on a checkpoint series.
FitReport fitDeHaan(const CheckpointSeries& series);

/// Cross-check of the Mellin-side and checkpoint-side constants: the
/// checkpoint intercept should exceed the Mellin intercept by b1 * gamma.
struct DeHaanConsistency {
  double b1Checkpoint = 0.0;
  double b1Mellin = 0.0;
  double b1RelativeGap = 0.0;
  double interceptGap = 0.0;          ///< beta - b2
  double expectedInterceptGap = 0.0;  ///< b1 * gamma (checkpoint b1)
  double interceptRelativeGap = 0.0;
  bool passed = false;
  std::string criterion;
};

DeHaanConsistency deHaanConsistency(const FitReport& checkpointFit, const FitReport& mellinFit,
                                    double b1Tolerance = 0.05, double interceptTolerance = 0.10);

}  // namespace beurling
