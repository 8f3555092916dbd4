#include "beurling/kahane_experiments.hpp"

#include <cmath>
#include <sstream>

#include "beurling/number_systems.hpp"

namespace beurling {

namespace {

CheckpointSeries named(CheckpointSeries s, std::string label) {
  s.label = std::move(label);
  return s;
}

TrendVerdict decayOnTail(const CheckpointSeries& s, double from) {
  const CheckpointSeries tail = tailFrom(s, from);
  if (tail.size() < 3) throw PreconditionError("need at least 3 checkpoints at or above t = " +
                                               std::to_string(from));
  return checkDecay(tail, tail.size());
}

}  // namespace

CheckpointSeries tailFrom(const CheckpointSeries& series, double from) {
  CheckpointSeries out;
  out.label = series.label;
  for (std::size_t j = 0; j < series.size(); ++j) {
    if (series.logPoints[j] >= from - 1e-12) {
      out.logPoints.push_back(series.logPoints[j]);
      out.values.push_back(series.values[j]);
    }
  }
  return out;
}

bool Lemma33Report::allBounded() const {
  for (const auto& v : fVerdict) if (!v.passed) return false;
  for (const auto& v : hVerdict) if (!v.passed) return false;
  return true;
}

Lemma33Report lemma33Diagnostics(const MeasureD& e, const std::vector<double>& checkpoints,
                                 std::size_t tailK, Algorithm alg) {
  for (Eigen::Index k = 0; k < e.size(); ++k) {
    if (e[k] < 0.0) {
      throw PreconditionError("lemma33Diagnostics: E has a negative coefficient at index " +
                              std::to_string(k));
    }
  }
  const MeasureD f = expStar(e, alg);
  const MeasureD hp = applyL(f);
  Lemma33Report report;
  report.epsilons = {0.1, 0.5};
  for (double eps : report.epsilons) {
    std::ostringstream tag;
    tag << eps;
    CheckpointSeries fr = sampleHarmonic(f, Weight::logPow(-eps), checkpoints,
                                         "int dF+/u / log^" + tag.str() + " x");
    CheckpointSeries hr = sampleRatio(hp, Weight{-eps, 1.0}, checkpoints,
                                      "H+(x) / (x log^" + tag.str() + " x)");
    report.fVerdict.push_back(checkBounded(fr, tailK));
    report.hVerdict.push_back(checkBounded(hr, tailK));
    report.fRatio.push_back(std::move(fr));
    report.hRatio.push_back(std::move(hr));
  }
  return report;
}

bool Prop12Report::allPassed() const {
  return sVerdict.passed && bMinusVerdict.passed && mkVerdict.passed && weightedVerdict.passed &&
         nkIncreasing.passed && mkPipelinesAgree && lemma41Passed && gPassed;
}

std::vector<const CheckpointSeries*> Prop12Report::series() const {
  return {&sOfX,   &weightedBMinus, &bMinusRatio, &mkRatio,    &mkRatioPartial, &gRatio,
          &nkRatio, &mkHarmonic,    &bMinusOverX, &lemma41Residual};
}

Prop12Report prop12Pipeline(const LogGrid& grid, const KahaneOptions& options) {
  const auto& points = options.checkpoints;
  if (points.empty()) throw InvalidArgument("prop12Pipeline: no checkpoints");
  if (grid.logLimit() <= 40.0 || grid.logLimit() <= points.back()) {
    std::ostringstream os;
    os << "prop12Pipeline: grid reaches log x = " << grid.logEnd()
       << ", needs 40 and the last checkpoint " << points.back();
    throw OutOfRange(os.str());
  }
  const Algorithm alg = options.algorithm;

  const MeasureD a = buildKahaneA(grid);
  const MeasureD bMinus = expStar(-a, alg);
  const MeasureD pi = buildLiPi(grid) + a;
  const MeasureD nK = expStar(pi, alg);
  const MeasureD mK = expStar(-pi, alg);

  Prop12Report r;
  r.grid = grid;
  r.sOfX = sampleHarmonic(bMinus, Weight::one(), points, "S(x)");
  r.weightedBMinus = sampleRatio(applyL(bMinus), Weight::invX(), points, "int log u dB-(u) / x");
  r.bMinusRatio = sampleRatio(bMinus, Weight::logOverX(), points, "B-(x) log x / x");
  r.mkRatio = sampleRatio(mK, Weight::logOverX(), points, "M_K(x) log x / x");
  r.gRatio = sampleRatio(applyL(a), Weight::invX(), points, "G(x) log2 x / x");
  for (std::size_t j = 0; j < points.size(); ++j) r.gRatio.values[j] *= std::log(points[j]);
  r.nkRatio = sampleRatio(nK, Weight::invX(), points, "N_K(x) / x");
  r.mkHarmonic = sampleHarmonic(mK, Weight::one(), points, "m_K(x)");
  r.bMinusOverX = sampleRatio(bMinus, Weight::invX(), points, "B-(x) / x");

  // Partial summation from m_K alone: M_K(x) = x m_K(x) - int_1^x m_K(u) du
  // with m_K constant between lattice points.
  {
    const double h = grid.h();
    const double growth = std::expm1(h);
    r.mkRatioPartial = named({points, {}, {}}, "M_K(x) log x / x via x m_K - int m_K");
    detail::CompensatedSum<double> m, integral;
    Eigen::Index k = 0;
    for (double t : points) {
      const Eigen::Index last = grid.floorIndex(t);
      for (; k <= last; ++k) {
        if (k > 0) integral.add(m.value() * std::exp((k - 1) * h) * growth);
        m.add(mK[k] * std::exp(-k * h));
      }
      const double x = std::exp(t);
      const double tailPiece = m.value() * (x - std::exp(last * h));
      const double mk = x * m.value() - (integral.value() + tailPiece);
      r.mkRatioPartial.values.push_back(mk * t / x);
    }
  }

  r.lemma41Residual = named({points, {}, {}}, "|m_K - B-/x| / (|B-/x| + 1e-12)");
  for (std::size_t j = 0; j < points.size(); ++j) {
    const double ref = r.bMinusOverX.values[j];
    const double res = std::abs(r.mkHarmonic.values[j] - ref) / (std::abs(ref) + 1e-12);
    r.lemma41Residual.values.push_back(res);
    r.lemma41MaxResidual = std::max(r.lemma41MaxResidual, res);
  }
  r.lemma41Passed = r.lemma41MaxResidual <= options.identityTolerance;

  for (std::size_t j = 0; j < points.size(); ++j) {
    const double ref = r.mkRatio.values[j];
    const double dev = std::abs(r.mkRatioPartial.values[j] - ref) / std::abs(ref);
    r.mkPipelineDeviation = std::max(r.mkPipelineDeviation, dev);
  }
  r.mkPipelinesAgree = r.mkPipelineDeviation <= options.pipelineTolerance;

  r.sVerdict = decayOnTail(r.sOfX, options.decayFrom);
  r.weightedVerdict = decayOnTail(r.weightedBMinus, options.decayFrom);
  r.bMinusVerdict = decayOnTail(r.bMinusRatio, options.decayFrom);
  r.mkVerdict = decayOnTail(r.mkRatio, options.decayFrom);
  r.nkIncreasing = checkGrowth(r.nkRatio, r.nkRatio.size(), 1.0);
  r.gFinalDeviation = std::abs(r.gRatio.values.back() - 1.0);
  r.gPassed = r.gFinalDeviation <= options.gTolerance;
  return r;
}

}  // namespace beurling
