#include <doctest.h>

#include <numbers>

#include "beurling/density_expression.hpp"
#include "beurling/number_systems.hpp"
#include "oracles.hpp"

using namespace beurling;

namespace {

double kahaneAOracle(double t) {
  return oracle::integrate([](double s) { return std::exp(s) / (s * std::log(s)); }, std::numbers::e, t);
}

double logIntegral(double x) {
  // li(x) = li(2) + int_2^x du / log u
  return 1.04516378011749278 + oracle::integrate([](double u) { return 1.0 / std::log(u); }, 2.0, x);
}

}  // namespace

TEST_CASE("li density") {
  CHECK(liLogDensity(0.0) == 1.0);
  CHECK(liLogDensity(0.99e-4) == doctest::Approx(std::expm1(0.99e-4) / 0.99e-4).epsilon(1e-15));
  CHECK(liLogDensity(1.0) == doctest::Approx(std::numbers::e - 1.0));
  // (1 - 1/u)/log u -> 1 as u -> 1+
  const double u = 1.0 + 1e-7;
  CHECK(liLogDensity(std::log(u)) / u == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("li closed forms on the lattice") {
  const LogGrid g(1e-3, 3001);
  const MeasureD pi = buildLiPi(g);
  CHECK(pi[0] == 0.0);
  const MeasureD m = expStar(-pi, Algorithm::Direct);
  CHECK(maxScaledDeviation(m, liMobius(g), expStar(pi, Algorithm::Direct)) < 1e-13);
  CHECK(std::abs(m[1] + std::expm1(g.h())) < 1e-14);
  const MeasureD n = expStar(pi);
  for (double t : {1.0, 2.0, 3.0}) {
    CHECK(primitiveAtLog(n, t) == doctest::Approx(std::exp(t)).epsilon(1e-12));
    CHECK(std::abs(primitiveAtLog(m, t) - (1.0 - t)) < 2 * t * g.h());
  }
  CHECK(maxScaledDeviation(logStar(n), pi, pi) < 1e-10);
}

TEST_CASE("classical primes up to 10") {
  const LogGrid g(1e-3, 3001);
  const auto cp = buildClassicalPrimes(g, 10);
  REQUIRE(cp.census.countByExponent.size() >= 4);
  CHECK(cp.census.countByExponent[1] == 4);
  CHECK(cp.census.countByExponent[2] == 2);
  CHECK(cp.census.countByExponent[3] == 1);
  CHECK(cp.census.totalAsFraction() == std::pair<std::uint64_t, std::uint64_t>{16, 3});
  CHECK(primitive(cp.pi, 10.0) == doctest::Approx(16.0 / 3.0).epsilon(1e-15));
  CHECK(primitive(cp.pi, 2.0 - 1e-3) == 0.0);
  CHECK(primitive(cp.pi, 2.0) == 1.0);
  CHECK_THROWS_AS(buildClassicalPi(g, 1), InvalidArgument);
  CHECK_THROWS_AS(buildClassicalPi(g, 100), OutOfRange);
}

TEST_CASE("classical primes against direct enumeration") {
  const std::uint64_t limit = 1000000;
  const LogGrid g(1e-4, 140001);
  const auto cp = buildClassicalPrimes(g, limit);
  for (unsigned k = 1; k < cp.census.countByExponent.size(); ++k) {
    const std::uint64_t root = oracle::integerRoot(limit, k);
    std::uint64_t count = 0;
    for (std::uint64_t p = 2; p <= root; ++p) count += oracle::isPrime(p);
    CHECK(cp.census.countByExponent[k] == count);
  }
  const double x = static_cast<double>(limit);
  const double total = primitive(cp.pi, x);
  CHECK(total == doctest::Approx(cp.census.total()).epsilon(1e-13));
  CHECK(std::abs(total / logIntegral(x) - 1.0) < 0.005);
  std::vector<double> gap;
  for (double t : {7.0, 10.0, 13.0}) gap.push_back(std::abs(primitiveAtLog(cp.pi, t) * t / std::exp(t) - 1.0));
  CHECK(gap[1] < gap[0]);
  CHECK(gap[2] < gap[1]);
}

TEST_CASE("kahane measure") {
  const LogGrid g(1e-3, 20001);
  const MeasureD pi = buildKahanePi(g);
  const MeasureD a = buildKahaneA(g);
  CHECK(pi.coeffs() == (buildLiPi(g) + a).coeffs());
  CHECK_THROWS_AS(buildKahanePi(LogGrid(1e-3, 3000)), OutOfRange);
  CHECK(a.coeffs().head(2718).isZero());
  CHECK(a[2719] > 0.0);
  for (double t : {5.0, 10.0, 20.0}) {
    CHECK(primitiveAtLog(a, t) == doctest::Approx(kahaneAOracle(t)).epsilon(2e-3));
  }
  std::vector<double> ratio;
  for (double t : {5.0, 10.0, 15.0, 20.0}) ratio.push_back(primitiveAtLog(pi, t) * t / std::exp(t));
  for (std::size_t j = 1; j < ratio.size(); ++j) CHECK(std::abs(ratio[j] - 1) < std::abs(ratio[j - 1] - 1));
}

TEST_CASE("powerWeight twists the kahane measure") {
  const LogGrid g(1e-2, 2001);
  // Cell integrals of the twisted density agree with the twisted cells to O(h).
  CHECK(maxRelativeDeviation(buildKahaneA(g, 1.0), scaleByPower(buildKahaneA(g), 1.0)) < g.h());
}

TEST_CASE("B plus and B minus") {
  const LogGrid g(1e-3, 20001);
  const MeasureD bp = buildBpm(g, +1), bm = buildBpm(g, -1);
  const auto direct = Algorithm::Direct;
  CHECK(maxScaledDeviation(convolve(bp, bm, direct), MeasureD::delta(g),
                           convolve(bp, variation(bm), direct)) < 1e-8);
  // B+ + B- = 2 cosh*(A) has only even convolution powers of A >= 0.
  const Eigen::ArrayXd floor = 1e-12 * (bp.coeffs().array().abs() + bm.coeffs().array().abs());
  CHECK(((bp + bm).coeffs().array() >= -floor).all());
  CHECK_THROWS_AS(buildBpm(g, 0), InvalidArgument);
}

TEST_CASE("m_K equals B- over x on a short grid") {
  const LogGrid g(1e-3, 20001);
  const MeasureD mk = expStar(-buildKahanePi(g));
  const MeasureD bm = buildBpm(g, -1);
  for (double t = 5.0; t <= 20.0; t += 5.0) {
    const double ref = primitiveAtLog(bm, t) / std::exp(g.floorIndex(t) * g.h());
    CHECK(std::abs(harmonicPrimitiveAtLog(mk, t) - ref) <= 1e-6 * (std::abs(ref) + 1e-12));
  }
}

TEST_CASE("buildSystem") {
  SystemSpec li;
  li.grid = LogGrid(1e-3, 5001);
  const NumberSystem sys = buildSystem(li);
  CHECK(primitiveAtLog(sys.n, 0.0) == 1.0);
  CHECK(primitiveAtLog(sys.pi, 0.0) == 0.0);
  CHECK(sys.inverseDeviation <= 1e-8);
  for (double t : {1.0, 3.0, 4.5}) CHECK(std::abs(primitiveAtLog(sys.m, t) - (1.0 - t)) < 2 * t * li.grid.h());

  SUBCASE("zero perturbations") {
    SystemSpec withE = li, withR = li;
    withE.perturbationE = DensitySpec::fromDensity([](double) { return 0.0; });
    withR.perturbationR = DensitySpec::fromDensity([](double) { return 0.0; });
    CHECK(buildSystem(withE).m.coeffs() == buildSystem(withR).m.coeffs());
    CHECK(buildSystem(withE).pi.coeffs() == sys.pi.coeffs());
  }
  SUBCASE("perturbation consistency") {
    SystemSpec spec = li;
    spec.perturbationE = DensityExpression::parse("indicator(3)/(u*log(u))").toDensitySpec();
    spec.perturbationR = DensityExpression::parse("u^(-2)").toDensitySpec();
    const MeasureD expected = buildLiPi(li.grid) + discretize(*spec.perturbationE, li.grid) +
                              discretize(*spec.perturbationR, li.grid);
    CHECK(buildSystem(spec).pi.coeffs() == expected.coeffs());
  }
  SUBCASE("mass at 1 is rejected") {
    SystemSpec spec = li;
    spec.base = BaseKind::Custom;
    DensitySpec atom;
    atom.atoms = {{1.0, 0.5}};
    spec.customBase = atom;
    CHECK_THROWS_AS(buildSystem(spec), ConstructionError);
  }
  SUBCASE("kahane N/x increases") {
    SystemSpec k;
    k.base = BaseKind::Kahane;
    k.grid = LogGrid(1e-3, 30001);
    const NumberSystem ks = buildSystem(k);
    const double r10 = primitiveAtLog(ks.n, 10.0) / std::exp(10.0);
    const double r20 = primitiveAtLog(ks.n, 20.0) / std::exp(20.0);
    const double r30 = primitiveAtLog(ks.n, 29.5) / std::exp(29.5);
    CHECK(r10 < r20);
    CHECK(r20 < r30);
  }
}

TEST_CASE("hypothesis report") {
  HypothesisOptions opt;
  opt.checkpoints = ladder(5.0, 30.0, 5.0);
  SystemSpec k;
  k.base = BaseKind::Kahane;
  k.grid = LogGrid(1e-3, 31001);
  const HypothesisReport kr = hypothesisReport(k, opt);
  CHECK(kr.eVerdict.passed);
  CHECK(kr.rVerdict.passed);
  CHECK(kr.m0Verdict.passed);
  CHECK(kr.allPassed());

  SystemSpec bad;
  bad.grid = k.grid;
  bad.perturbationE = DensityExpression::parse("indicator(2)/log(u)").toDensitySpec();
  const HypothesisReport br = hypothesisReport(bad, opt);
  CHECK_FALSE(br.eVerdict.passed);

  SystemSpec r;
  r.grid = k.grid;
  r.perturbationR = DensityExpression::parse("u^(-2)").toDensitySpec();
  opt.sigma0 = 0.5;
  const HypothesisReport rr = hypothesisReport(r, opt);
  CHECK(rr.rVerdict.passed);
  REQUIRE(rr.rSigma0Verdict);
  CHECK(rr.rSigma0Verdict->passed);
  CHECK(rr.rPartials.values.back() == doctest::Approx(0.5).epsilon(1e-3));

  // int |dR|/u = log x for dR = du.
  SystemSpec heavyR;
  heavyR.grid = k.grid;
  heavyR.perturbationR = DensityExpression::parse("1").toDensitySpec();
  CHECK_FALSE(hypothesisReport(heavyR, opt).rVerdict.passed);
}
