#include <doctest.h>

#include <random>

#include "beurling/density_expression.hpp"
#include "beurling/fitting.hpp"
#include "beurling/kahane_experiments.hpp"
#include "beurling/number_systems.hpp"
#include "oracles.hpp"

using namespace beurling;

namespace {

CheckpointSeries series(std::vector<double> t, std::vector<double> v) {
  return CheckpointSeries{std::move(t), std::move(v), "s"};
}

}  // namespace

TEST_CASE("ladder and validation") {
  const auto l = ladder(5.0, 50.0, 5.0);
  CHECK(l.size() == 10);
  CHECK(l.back() == 50.0);
  CHECK_THROWS_AS(series({1.0, 1.0}, {0.0, 0.0}).validate(), InvalidArgument);
  CHECK_THROWS_AS(series({1.0, 2.0}, {0.0}).validate(), InvalidArgument);
}

TEST_CASE("sampleRatio") {
  const LogGrid g(0.01, 1001);
  const auto s = sampleRatio(MeasureD::delta(g), Weight::invX(), {1.0, 2.0, 5.0});
  CHECK(s.values[0] == doctest::Approx(std::exp(-1.0)));
  CHECK(s.values[2] == doctest::Approx(std::exp(-5.0)));
  CHECK_THROWS_AS(sampleRatio(MeasureD::delta(g), Weight::invX(), {20.0}), OutOfRange);
  const auto w = Weight::logPowOverX(0.5);
  CHECK(w.atLog(4.0) == doctest::Approx(2.0 * std::exp(-4.0)));
}

TEST_CASE("checkDecay") {
  const auto t = ladder(1.0, 10.0, 1.0);
  std::vector<double> inv, flat;
  for (double x : t) inv.push_back(1.0 / x), flat.push_back(3.0);
  CHECK(checkDecay(series(t, inv)).passed);
  CHECK_FALSE(checkDecay(series(t, flat)).passed);
  CHECK_THROWS_AS(checkDecay(series(t, inv), 2), PreconditionError);
  CHECK_THROWS_AS(checkDecay(series({1, 2}, {1, 0.5}), 3), PreconditionError);
  std::vector<double> slow;
  for (double x : t) slow.push_back(1.0 + 1.0 / x);
  CHECK_FALSE(checkDecay(series(t, slow), 5).passed);

  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.01, 100.0);
  for (int i = 0; i < 20; ++i) {
    std::vector<double> v(t.size());
    for (auto& x : v) x = u(rng) - 50.0;
    const double c = u(rng);
    std::vector<double> scaled = v;
    for (auto& x : scaled) x *= c;
    CHECK(checkDecay(series(t, v)).passed == checkDecay(series(t, scaled)).passed);
  }
}

TEST_CASE("growth, bounded, convergent") {
  const auto t = ladder(1.0, 8.0, 1.0);
  std::vector<double> up, partial, linear;
  for (double x : t) up.push_back(x), partial.push_back(1.0 - std::exp(-x)), linear.push_back(x);
  CHECK(checkGrowth(series(t, up), 5, 1.5).passed);
  CHECK_FALSE(checkGrowth(series(t, up), 5, 3.0).passed);
  CHECK_FALSE(checkBounded(series(t, up)).passed);
  CHECK(checkBounded(series(t, partial)).passed == false);
  std::vector<double> down(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) down[j] = 1.0 / t[j];
  CHECK(checkBounded(series(t, down)).passed);
  CHECK(checkConvergent(series(t, partial)).passed);
  CHECK_FALSE(checkConvergent(series(t, linear)).passed);
  CHECK(checkConvergent(series(t, std::vector<double>(t.size(), 2.0))).passed);
  std::vector<double> saturated = {0.4, 0.49, 0.4999, 0.5, 0.5, 0.5, 0.5, 0.5};
  CHECK(checkConvergent(series(t, saturated)).passed);
}

TEST_CASE("mellin model fit") {
  const auto sigmas = logSpacedSigmas(1e-5, 1e-2, 30);
  CHECK(sigmas.front() == doctest::Approx(1.01));
  CHECK(sigmas.back() == doctest::Approx(1.00001));

  SUBCASE("synthetic recovery") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> noise(0.0, 1e-8);
    std::vector<double> v;
    for (double s : sigmas) {
      const double big = std::log(1.0 / (s - 1.0));
      v.push_back(1.0 * std::log(big) + 0.3 - 0.1 / big + noise(rng));
    }
    const FitReport r = fitMellinModel(sigmas, v, 1.0, 0.02);
    CHECK(r.passed);
    CHECK(std::abs(r.constant("alpha") - 1.0) < 1e-3);
    CHECK(std::abs(r.constant("c1") - 0.3) < 1e-3);
    CHECK(std::abs(r.constant("c2") + 0.1) < 1e-3);
    CHECK(r.residualRMS < 1e-7);
    CHECK_THROWS_AS(r.constant("b1"), InvalidArgument);
  }
  SUBCASE("zero measure") {
    const LogGrid g(1.0, 2000001);
    const FitReport r = fitMellinExpansion(MeasureD(g), sigmas);
    CHECK(r.constant("alpha") == 0.0);
    CHECK(r.constant("c1") == 0.0);
    CHECK(r.constant("c2") == 0.0);
    CHECK(r.residualRMS == 0.0);
  }
  SUBCASE("truncation clipping") {
    const LogGrid g(1.0, 5001);
    const MellinSample s = sampleMellin(MeasureD::delta(g), sigmas);
    CHECK(s.clipped > 0);
    for (double x : s.sigmas) CHECK((x - 1.0) * g.logEnd() >= 14.0);
    CHECK_THROWS_AS(fitMellinExpansion(MeasureD::delta(LogGrid(1.0, 100)), sigmas), FitFailure);
  }
  SUBCASE("bad input") {
    CHECK_THROWS_AS(fitMellinModel({0.5, 1.1, 1.2}, {1, 2, 3}), InvalidArgument);
    CHECK_THROWS_AS(fitMellinModel({1.1, 1.2}, {1, 2}), FitFailure);
    CHECK_THROWS_AS(fitMellinModel({1.1, 1.1, 1.1}, {1, 2, 3}), FitFailure);
  }
}

TEST_CASE("lattice mellin of dA against quadrature") {
  const LogGrid g(0.1, 2000001);
  const MeasureD a = buildKahaneA(g, 1.0);
  for (double eps : {1e-4, 1e-3, 1e-2}) {
    const double ref = oracle::integrateToInfinity(
        [eps](double t) { return std::exp(-eps * t) / (t * std::log(t)); }, std::numbers::e);
    CHECK(mellin(a, eps) == doctest::Approx(ref).epsilon(1e-4));
  }
}

TEST_CASE("de Haan fits") {
  const auto t = ladder(10.0, 50.0, 5.0);
  std::vector<double> v;
  for (double x : t) v.push_back(2.0 * std::log(x) + 1.0);
  const FitReport r = fitDeHaan(series(t, v));
  CHECK(r.constant("b1") == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(r.constant("beta") == doctest::Approx(1.0).epsilon(1e-10));

  std::vector<double> sig = logSpacedSigmas(1e-5, 1e-2, 20), mv;
  for (double s : sig) mv.push_back(2.0 * std::log(1.0 / (s - 1.0)) + 1.0 - 2.0 * kEulerGamma);
  const FitReport m = fitMellinLogModel(sig, mv);
  const DeHaanConsistency c = deHaanConsistency(r, m);
  CHECK(c.passed);
  CHECK(c.b1RelativeGap < 1e-10);
  CHECK(c.interceptRelativeGap < 1e-10);

  std::vector<double> off = mv;
  for (auto& x : off) x += 0.5;
  CHECK_FALSE(deHaanConsistency(r, fitMellinLogModel(sig, off)).passed);
}

TEST_CASE("bounded-ratio diagnostics for E") {
  const LogGrid g(1e-3, 31001);
  const auto points = ladder(5.0, 30.0, 5.0);
  const Lemma33Report zero = lemma33Diagnostics(MeasureD(g), points);
  CHECK(zero.allBounded());
  CHECK(zero.fRatio[1].values.back() < zero.fRatio[1].values.front());

  const Lemma33Report k = lemma33Diagnostics(buildKahaneA(g), points);
  CHECK(k.epsilons == std::vector<double>{0.1, 0.5});
  CHECK(k.fVerdict[1].passed);
  CHECK(k.hVerdict[1].passed);

  const MeasureD heavy =
      discretize(DensityExpression::parse("indicator(2)/log(u)").toDensitySpec(), g);
  CHECK_FALSE(lemma33Diagnostics(heavy, points).fVerdict[1].passed);
  CHECK_THROWS_AS(lemma33Diagnostics(-buildKahaneA(g), points), PreconditionError);
}

TEST_CASE("kahane pipeline on a coarse grid") {
  const LogGrid g(2e-3, 22501);
  KahaneOptions opt;
  opt.checkpoints = ladder(5.0, 40.0, 5.0);
  const Prop12Report r = prop12Pipeline(g, opt);
  CHECK(r.lemma41Passed);
  CHECK(r.mkPipelinesAgree);
  CHECK(r.mkVerdict.passed);
  CHECK(r.bMinusVerdict.passed);
  CHECK(r.nkIncreasing.passed);
  CHECK(r.gPassed);
  CHECK(r.series().size() == 10);
  const double t = 40.0;
  const double gOracle = oracle::integrate([](double s) { return std::exp(s) / std::log(s); }, std::numbers::e, t);
  CHECK(r.gRatio.values.back() == doctest::Approx(gOracle * std::log(t) / std::exp(t)).epsilon(1e-2));
  CHECK_THROWS_AS(prop12Pipeline(LogGrid(1e-3, 30001), opt), OutOfRange);
}
