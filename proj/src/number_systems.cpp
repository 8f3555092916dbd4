#include "beurling/number_systems.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace beurling {

namespace {

constexpr double kKahaneCut = std::numbers::e;  // log of e^e

void requireReach(const LogGrid& grid, double logNeeded, const char* who) {
  if (grid.logEnd() < logNeeded) {
    std::ostringstream os;
    os << who << ": grid ends at log x = " << grid.logEnd() << ", needs at least " << logNeeded;
    throw OutOfRange(os.str());
  }
}

}  // namespace

double liLogDensity(double t) {
  if (t < 1e-4) return 1.0 + t * (0.5 + t * (1.0 / 6.0 + t / 24.0));
  return std::expm1(t) / t;
}

MeasureD buildLiPi(const LogGrid& grid) {
  return discretize(DensitySpec::fromLogDensity(liLogDensity, QuadratureRule::Midpoint), grid);
}

MeasureD liMobius(const LogGrid& grid) {
  Eigen::VectorXd c = Eigen::VectorXd::Constant(grid.n(), -std::expm1(grid.h()));
  c[0] = 1.0;
  return MeasureD(grid, std::move(c));
}

MeasureD buildKahaneA(const LogGrid& grid, double powerWeight) {
  const double growth = 1.0 - powerWeight;
  auto phi = [growth](double t) {
    if (t < kKahaneCut) return 0.0;
    return std::exp(growth * t) / (t * std::log(t));
  };
  return discretize(DensitySpec::fromLogDensity(phi, QuadratureRule::Adaptive, {kKahaneCut}), grid);
}

MeasureD buildKahanePi(const LogGrid& grid) {
  requireReach(grid, kKahaneCut + 1.0, "buildKahanePi");
  return buildLiPi(grid) + buildKahaneA(grid);
}

MeasureD buildBpm(const LogGrid& grid, int sign, Algorithm alg) {
  if (sign != 1 && sign != -1) throw InvalidArgument("buildBpm: sign must be +1 or -1");
  requireReach(grid, kKahaneCut + 1.0, "buildBpm");
  const MeasureD a = buildKahaneA(grid);
  return expStar(sign > 0 ? a : -a, alg);
}

ClassicalPrimes buildClassicalPrimes(const LogGrid& grid, std::uint64_t sieveLimit) {
  if (sieveLimit < 2) throw InvalidArgument("buildClassicalPi: sieveLimit must be at least 2");
  const double logLimit = std::log(static_cast<double>(sieveLimit));
  if (grid.nearestIndex(logLimit) >= grid.n()) {
    throw OutOfRange("buildClassicalPi: sieveLimit " + std::to_string(sieveLimit) +
                     " exceeds the grid range");
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(grid.n());
  PrimePowerCensus census;
  census.limit = sieveLimit;
  census.countByExponent.assign(2, 0);
  forEachPrime(sieveLimit, [&](std::uint64_t p) {
    std::uint64_t q = p;
    for (std::size_t j = 1;; ++j) {
      if (census.countByExponent.size() <= j) census.countByExponent.resize(j + 1, 0);
      ++census.countByExponent[j];
      c[grid.nearestIndex(std::log(static_cast<double>(q)))] += 1.0 / static_cast<double>(j);
      if (q > sieveLimit / p) break;
      q *= p;
    }
  });
  return {MeasureD(grid, std::move(c)), std::move(census)};
}

MeasureD buildClassicalPi(const LogGrid& grid, std::uint64_t sieveLimit) {
  return buildClassicalPrimes(grid, sieveLimit).pi;
}

const char* toString(BaseKind kind) {
  switch (kind) {
    case BaseKind::Li: return "li";
    case BaseKind::ClassicalPrimes: return "classical";
    case BaseKind::Kahane: return "kahane";
    case BaseKind::Custom: return "custom";
  }
  return "?";
}

MeasureD buildBase(const SystemSpec& spec) {
  switch (spec.base) {
    case BaseKind::Li: return buildLiPi(spec.grid);
    case BaseKind::ClassicalPrimes: return buildClassicalPi(spec.grid, spec.sieveLimit);
    case BaseKind::Kahane: return buildKahanePi(spec.grid);
    case BaseKind::Custom:
      if (!spec.customBase) throw ConfigError("custom base requires a density");
      return discretize(*spec.customBase, spec.grid);
  }
  throw ConfigError("unknown base kind");
}

MeasureD assemblePi(const SystemSpec& spec) {
  MeasureD pi = buildBase(spec);
  if (spec.perturbationE) pi = pi + discretize(*spec.perturbationE, spec.grid);
  if (spec.perturbationR) pi = pi + discretize(*spec.perturbationR, spec.grid);
  return pi;
}

NumberSystem buildSystem(const SystemSpec& spec, const BuildOptions& options) {
  MeasureD base = buildBase(spec);
  MeasureD pi = base;
  if (spec.perturbationE) pi = pi + discretize(*spec.perturbationE, spec.grid);
  if (spec.perturbationR) pi = pi + discretize(*spec.perturbationR, spec.grid);

  if (std::abs(pi[0]) > 1e-12) {
    std::ostringstream os;
    os << "buildSystem: Pi(1) = " << pi[0] << ", a prime measure must vanish at u = 1";
    throw ConstructionError(os.str());
  }
  MeasureD n = expStar(pi, options.algorithm);
  MeasureD m = expStar(-pi, options.algorithm);
  if (std::abs(primitiveAtLog(n, 0.0) - 1.0) > 1e-12) {
    throw ConstructionError("buildSystem: N(1) != 1");
  }

  double deviation = 0.0;
  if (options.verifyInverse) {
    const MeasureD product = convolve(n, m, options.algorithm);
    const MeasureD envelope = convolve(variation(n), variation(m), options.algorithm);
    deviation = maxScaledDeviation(product, MeasureD::delta(spec.grid), envelope);
    if (!(deviation <= options.inverseTolerance)) {
      std::ostringstream os;
      os << "buildSystem: dN * dM deviates from delta_1 by " << deviation
         << " of the envelope (tolerance " << options.inverseTolerance << ")";
      throw ConstructionError(os.str());
    }
  }
  return NumberSystem{std::move(pi), std::move(n), std::move(m), std::move(base), spec, deviation};
}

bool HypothesisReport::allPassed() const {
  return eVerdict.passed && rVerdict.passed && m0Verdict.passed &&
         (!rSigma0Verdict || rSigma0Verdict->passed);
}

HypothesisReport hypothesisReport(const SystemSpec& spec, const HypothesisOptions& options) {
  std::vector<double> points = options.checkpoints;
  if (points.empty()) points = ladder(5.0, std::floor(spec.grid.logEnd() / 5.0) * 5.0, 5.0);

  HypothesisReport report;
  const MeasureD zero(spec.grid);

  // Kahane's measure splits as dPi_li (base) + dA (perturbation E).
  const bool kahane = spec.base == BaseKind::Kahane;
  const MeasureD basePi = kahane ? buildLiPi(spec.grid) : buildBase(spec);
  MeasureD e = kahane ? buildKahaneA(spec.grid) : zero;
  if (spec.perturbationE) e = e + discretize(*spec.perturbationE, spec.grid);
  report.eRatio = sampleRatio(variation(e), Weight::logOverX(), points, "|E|(x) log x / x");
  report.eVerdict = checkDecay(report.eRatio, options.tailK);

  const MeasureD r = spec.perturbationR ? discretize(*spec.perturbationR, spec.grid) : zero;
  report.rPartials = sampleHarmonic(variation(r), Weight::one(), points, "int |dR|/u");
  report.rVerdict = checkConvergent(report.rPartials, options.tailK);
  if (options.sigma0) {
    // int |dR|/u^sigma0 = harmonic primitive of u^{1-sigma0} |dR|.
    const MeasureD shifted = scaleByPower(variation(r), *options.sigma0 - 1.0);
    report.rSigma0Partials = sampleHarmonic(shifted, Weight::one(), points, "int |dR|/u^sigma0");
    report.rSigma0Verdict = checkConvergent(*report.rSigma0Partials, options.tailK);
  }

  const bool liBase = kahane || spec.base == BaseKind::Li;
  const MeasureD m0 = liBase ? liMobius(spec.grid) : expStar(-basePi, options.algorithm);
  const CheckpointSeries m0Raw = sampleRatio(m0, Weight::logPowOverX(options.a), points);
  std::vector<double> floor(points.size(), 0.0);
  if (!liBase) {
    const MeasureD envelope = expStar(variation(basePi), options.algorithm);
    const CheckpointSeries env = sampleRatio(envelope, Weight::logPowOverX(options.a), points);
    for (std::size_t j = 0; j < points.size(); ++j) {
      floor[j] = 1e3 * std::numeric_limits<double>::epsilon() * std::abs(env.values[j]);
    }
  }
  CheckpointSeries m0Series;
  m0Series.label = "|M0(x)| log^a x / x";
  for (std::size_t j = 0; j < points.size(); ++j) {
    const double v = std::abs(m0Raw.values[j]);
    if (v <= floor[j]) {
      ++report.m0Unresolved;
      continue;
    }
    m0Series.logPoints.push_back(points[j]);
    m0Series.values.push_back(v);
  }
  report.m0Ratio = std::move(m0Series);
  if (report.m0Ratio.size() < options.tailK) {
    report.m0Verdict.passed = false;
    report.m0Verdict.criterion = "at least " + std::to_string(options.tailK) +
                                 " checkpoints resolved above the cancellation floor";
    report.m0Verdict.detail = "unresolved=" + std::to_string(report.m0Unresolved);
  } else {
    report.m0Verdict = checkBounded(report.m0Ratio, options.tailK);
    report.m0Verdict.detail += " unresolved=" + std::to_string(report.m0Unresolved);
  }
  return report;
}

}  // namespace beurling
