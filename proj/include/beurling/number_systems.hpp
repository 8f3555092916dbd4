#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "beurling/checkpoint_series.hpp"
#include "beurling/convolution.hpp"
#include "beurling/discretize.hpp"
#include "beurling/sieve.hpp"

namespace beurling {

/// Limit of (1 - 1/u)/log u times u, as a function of t = log u:
/// (e^t - 1)/t, with the series 1 + t/2 + t^2/6 for t < 1e-4.
double liLogDensity(double t);

/// dPi_li = (1 - 1/u)/log u du on the lattice, by the midpoint rule in
/// log u. With this rule exp*(-dPi_li) is exactly delta_1 - (e^h - 1) per
/// lattice point, the lattice form of delta_1 - du/u.
MeasureD buildLiPi(const LogGrid& grid);

/// exp*(-dPi_li) in closed form on the lattice: delta_1 - (e^h - 1) at every
/// lattice point k >= 1. Exact for buildLiPi; computing it by the recurrence
/// loses about e^{kh} eps to cancellation.
MeasureD liMobius(const LogGrid& grid);

/// u^{-s} dA(u) with dA = chi_[e^e, inf)(u) du / (log u loglog u). The cell
/// containing u = e^e gets its exact partial mass. s = 1 gives dA(u)/u,
/// which stays representable on very long grids.
MeasureD buildKahaneA(const LogGrid& grid, double powerWeight = 0.0);

/// Kahane's prime measure dPi_li + dA. Needs the grid to reach e^{e+1}.
MeasureD buildKahanePi(const LogGrid& grid);

/// exp*(sign dA).
MeasureD buildBpm(const LogGrid& grid, int sign, Algorithm alg = Algorithm::Auto);

struct ClassicalPrimes {
  MeasureD pi;
  PrimePowerCensus census;
};

/// Riemann's prime-power measure sum_{p^j <= limit} (1/j) delta_{p^j}, atoms
/// snapped to the lattice. Zero beyond sieveLimit.
ClassicalPrimes buildClassicalPrimes(const LogGrid& grid, std::uint64_t sieveLimit);
MeasureD buildClassicalPi(const LogGrid& grid, std::uint64_t sieveLimit);

enum class BaseKind { Li, ClassicalPrimes, Kahane, Custom };

const char* toString(BaseKind kind);

/// dPi = dPi_0 + dE + dR with the named components of the decomposition
/// used by the hypothesis diagnostics.
struct SystemSpec {
  BaseKind base = BaseKind::Li;
  LogGrid grid{1e-3, 1001};
  std::uint64_t sieveLimit = 100'000'000;  ///< classical primes only
  std::optional<DensitySpec> customBase;
  std::optional<DensitySpec> perturbationE;
  std::optional<DensitySpec> perturbationR;
  /// Source text of the densities, carried for reports.
  std::string customBaseText, perturbationEText, perturbationRText;
};

struct BuildOptions {
  Algorithm algorithm = Algorithm::Auto;
  /// Tolerance of convolve(dN, dM) = delta_1 against the envelope |dN| * |dM|.
  double inverseTolerance = 1e-8;
  /// Skip the dN * dM check (it costs two extra convolutions).
  bool verifyInverse = true;
};

/// dPi, dN = exp*(dPi), dM = exp*(-dPi), plus the base dPi_0 alone.
struct NumberSystem {
  MeasureD pi;
  MeasureD n;
  MeasureD m;
  MeasureD basePi;
  SystemSpec provenance;
  double inverseDeviation = 0.0;  ///< measured dN * dM - delta_1 against the envelope
};

/// dPi_0 of a spec.
MeasureD buildBase(const SystemSpec& spec);

/// dPi_0 + dE + dR summed in that order.
MeasureD assemblePi(const SystemSpec& spec);

/// Builds and verifies a system: Pi(1) = 0, N(1) = 1 and dN * dM = delta_1.
/// Throws ConstructionError with a diagnostic when a check fails.
NumberSystem buildSystem(const SystemSpec& spec, const BuildOptions& options = {});

struct HypothesisOptions {
  std::vector<double> checkpoints;  ///< log x values; default 5, 10, ..., up to the grid
  double a = 1.0;                   ///< exponent of the M_0 bound O(x / log^a x)
  std::size_t tailK = 5;
  std::optional<double> sigma0;  ///< also check int |dR|/u^sigma0 < inf when set
  Algorithm algorithm = Algorithm::Auto;
};

/// Diagnostics for the three hypotheses of the perturbation theorem:
///  (i)   |E|(x) log x / x -> 0,
///  (ii)  int |dR(u)|/u converges,
///  (iii) |M_0(x)| log^a x / x stays bounded (checkBounded).
/// Each verdict is a finite-checkpoint proxy. A Kahane base is split as
/// dPi_0 = dPi_li and dE = dA (plus any explicit E). For an li base M_0 is
/// the lattice closed form. Otherwise M_0 is computed, and checkpoints where
/// |M_0(x)| is within 1000 eps of the envelope primitive exp*(|dPi_0|)(x)
/// are unresolved in double precision: they are dropped from series (iii)
/// and counted in m0Unresolved.
struct HypothesisReport {
  CheckpointSeries eRatio;
  TrendVerdict eVerdict;
  CheckpointSeries rPartials;
  TrendVerdict rVerdict;
  CheckpointSeries m0Ratio;
  TrendVerdict m0Verdict;
  std::size_t m0Unresolved = 0;
  std::optional<CheckpointSeries> rSigma0Partials;
  std::optional<TrendVerdict> rSigma0Verdict;

  bool allPassed() const;
};

HypothesisReport hypothesisReport(const SystemSpec& spec, const HypothesisOptions& options = {});

}  // namespace beurling
