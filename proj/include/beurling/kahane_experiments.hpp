#pragma once

#include <string>
#include <vector>

#include "beurling/checkpoint_series.hpp"
#include "beurling/convolution.hpp"

namespace beurling {

/// Growth diagnostics of dF+ = exp*(E) and dH+ = L dF+ for E >= 0:
/// harmonic primitive of dF+ over log^eps x and H+(x) over x log^eps x,
/// for eps in {0.1, 0.5}. Each series is judged by checkBounded.
struct Lemma33Report {
  std::vector<double> epsilons;
  std::vector<CheckpointSeries> fRatio;
  std::vector<TrendVerdict> fVerdict;
  std::vector<CheckpointSeries> hRatio;
  std::vector<TrendVerdict> hVerdict;

  bool allBounded() const;
};

/// Throws PreconditionError when E has a negative coefficient.
Lemma33Report lemma33Diagnostics(const MeasureD& e, const std::vector<double>& checkpoints,
                                 std::size_t tailK = 5, Algorithm alg = Algorithm::Auto);

struct KahaneOptions {
  std::vector<double> checkpoints = ladder(5.0, 50.0, 5.0);
  /// Sub-range on which the o(.) series are judged.
  double decayFrom = 10.0;
  Algorithm algorithm = Algorithm::Auto;
  double identityTolerance = 1e-6;  ///< m_K against B-(x)/x
  double pipelineTolerance = 1e-6;  ///< direct M_K against partial summation
  double gTolerance = 0.10;         ///< G log2 x / x against 1 at the last checkpoint
};

/// End-to-end run over Kahane's system. The o(.) verdicts are
/// finite-checkpoint proxies judged on checkpoints t >= decayFrom with the
/// whole sub-range as the tail.
struct Prop12Report {
  LogGrid grid{1.0, 1};
  CheckpointSeries sOfX;             ///< S(x) = int dB-/u
  CheckpointSeries weightedBMinus;   ///< int log u dB-(u) / x
  CheckpointSeries bMinusRatio;      ///< B-(x) log x / x
  CheckpointSeries mkRatio;          ///< M_K(x) log x / x, direct primitive
  CheckpointSeries mkRatioPartial;   ///< same via x m_K(x) - int m_K
  CheckpointSeries gRatio;           ///< G(x) log2 x / x, G = int log u dA
  CheckpointSeries nkRatio;          ///< N_K(x) / x
  CheckpointSeries mkHarmonic;       ///< m_K(x)
  CheckpointSeries bMinusOverX;      ///< B-(x) / x
  CheckpointSeries lemma41Residual;  ///< |m_K - B-/x| / (|B-/x| + 1e-12)

  TrendVerdict sVerdict, bMinusVerdict, mkVerdict, weightedVerdict;
  TrendVerdict nkIncreasing;  ///< strict increase over every checkpoint
  double mkPipelineDeviation = 0.0;
  bool mkPipelinesAgree = false;
  double lemma41MaxResidual = 0.0;
  bool lemma41Passed = false;
  double gFinalDeviation = 0.0;
  bool gPassed = false;

  bool allPassed() const;
  /// All series in emission order.
  std::vector<const CheckpointSeries*> series() const;
};

/// Requires the grid to reach e^40 and the largest checkpoint.
Prop12Report prop12Pipeline(const LogGrid& grid, const KahaneOptions& options = {});

/// Checkpoints t with t >= from.
CheckpointSeries tailFrom(const CheckpointSeries& series, double from);

}  // namespace beurling
