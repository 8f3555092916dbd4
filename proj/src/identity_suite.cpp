#include "beurling/identity_suite.hpp"

#include <random>

namespace beurling {

namespace {

class Tracker {
 public:
  Tracker(std::string name, double tol) : check_{std::move(name), 0.0, tol, false} {}
  void observe(double dev) {
    if (!(dev <= check_.deviation)) check_.deviation = dev;  // NaN propagates
  }
  IdentityCheck finish() {
    check_.passed = check_.deviation <= check_.tolerance;
    return check_;
  }

 private:
  IdentityCheck check_;
};

}  // namespace

std::vector<IdentityCheck> runIdentitySuite(const IdentitySuiteOptions& options) {
  const LogGrid grid(options.h, options.n);
  const Algorithm alg = options.algorithm;
  const double tol = options.tolerance;
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> uniform(-1.0, 1.0);
  auto draw = [&](double scale) {
    Eigen::VectorXd c(options.n);
    for (Eigen::Index k = 0; k < options.n; ++k) c[k] = scale * uniform(rng);
    return MeasureD(grid, std::move(c));
  };
  const MeasureD delta = MeasureD::delta(grid);

  Tracker commutative("commutativity", tol), associative("associativity", tol),
      identity("identity", tol), derivation("derivation", tol), chebyshev("chebyshev", tol),
      expLaw("exponential_law", tol), inverse("inverse", tol), invExp("invert_exp", tol),
      logRound("log_round_trip", tol), positivity("positivity", 0.0), domination("domination", 0.0);

  for (int s = 0; s < options.samples; ++s) {
    const MeasureD a = draw(1.0), b = draw(1.0), c = draw(1.0);
    const MeasureD va = variation(a), vb = variation(b), vc = variation(c);

    const MeasureD ab = convolve(a, b, alg);
    const MeasureD vab = convolve(va, vb, alg);
    commutative.observe(maxScaledDeviation(convolve(b, a, alg), ab, vab));
    associative.observe(maxScaledDeviation(convolve(ab, c, alg), convolve(a, convolve(b, c, alg), alg),
                                           convolve(vab, vc, alg)));
    identity.observe(maxScaledDeviation(convolve(delta, a, alg), a, va));

    derivation.observe(maxScaledDeviation(
        applyL(ab), convolve(applyL(a), b, alg) + convolve(a, applyL(b), alg), applyL(vab)));

    const MeasureD ea = expStar(a, alg);
    const MeasureD envA = expStar(va, alg);
    chebyshev.observe(
        maxScaledDeviation(applyL(ea), convolve(applyL(a), ea, alg), applyL(envA)));

    const MeasureD eb = expStar(b, alg);
    expLaw.observe(maxScaledDeviation(expStar(a + b, alg), convolve(ea, eb, alg),
                                      expStar(va + vb, alg)));

    const MeasureD iea = invert(ea, alg);
    inverse.observe(
        maxScaledDeviation(convolve(ea, iea, alg), delta, convolve(envA, variation(iea), alg)));
    invExp.observe(maxScaledDeviation(iea, expStar(-a, alg), envA));

    const MeasureD x = draw(0.1);
    logRound.observe(maxScaledDeviation(logStar(expStar(x, alg), alg), x, variation(x)));

    const MeasureD ep = expStar(va, alg);
    bool nonneg = true, dominated = true;
    for (Eigen::Index k = 0; k < options.n; ++k) {
      nonneg = nonneg && ep[k] >= 0.0;
      dominated = dominated && std::abs(ea[k]) <= envA[k] * (1.0 + 1e-12);
    }
    positivity.observe(nonneg ? 0.0 : 1.0);
    domination.observe(dominated ? 0.0 : 1.0);
  }

  return {commutative.finish(), associative.finish(), identity.finish(), derivation.finish(),
          chebyshev.finish(),   expLaw.finish(),      inverse.finish(),  invExp.finish(),
          logRound.finish(),    positivity.finish(),  domination.finish()};
}

}  // namespace beurling
