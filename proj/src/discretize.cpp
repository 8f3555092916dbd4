#include "beurling/discretize.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>

namespace beurling {

namespace {

constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Estimate {
  double value;
  double error;
};

Estimate gk15(const std::function<double(double)>& f, double a, double b) {
  const double c = 0.5 * (a + b);
  const double r = 0.5 * (b - a);
  const double fc = f(c);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (int i = 0; i < 7; ++i) {
    const double x = r * kKronrodNodes[i];
    const double sum = f(c - x) + f(c + x);
    kronrod += kKronrodWeights[i] * sum;
    if (i % 2 == 1) gauss += kGaussWeights[i / 2] * sum;
  }
  if (!std::isfinite(kronrod)) {
    throw IntegrationFailure("integrateAdaptive: non-finite density on [" + std::to_string(a) +
                                 ", " + std::to_string(b) + "]",
                             -1);
  }
  return {kronrod * r, std::abs((kronrod - gauss) * r)};
}

}  // namespace

double integrateAdaptive(const std::function<double(double)>& f, double a, double b,
                         double relTol, int maxDepth) {
  if (b <= a) return 0.0;
  // Global refinement: bisect the interval with the largest error estimate
  // until the summed error meets the target.
  struct Piece {
    double a, b;
    Estimate est;
    int depth;
    bool operator<(const Piece& o) const { return est.error < o.est.error; }
  };
  std::priority_queue<Piece> pieces;
  pieces.push({a, b, gk15(f, a, b), 0});
  double value = pieces.top().est.value, error = pieces.top().est.error;
  for (;;) {
    const double tol = std::max(relTol * std::abs(value), 1e-300);
    if (error <= tol || error <= 1e-15 * std::abs(value)) return value;
    const Piece worst = pieces.top();
    if (worst.depth >= maxDepth) {
      throw IntegrationFailure("integrateAdaptive: error target not met on [" +
                                   std::to_string(worst.a) + ", " + std::to_string(worst.b) + "]",
                               -1);
    }
    pieces.pop();
    const double m = 0.5 * (worst.a + worst.b);
    const Piece left{worst.a, m, gk15(f, worst.a, m), worst.depth + 1};
    const Piece right{m, worst.b, gk15(f, m, worst.b), worst.depth + 1};
    value += left.est.value + right.est.value - worst.est.value;
    error += left.est.error + right.est.error - worst.est.error;
    pieces.push(left);
    pieces.push(right);
  }
}
DensitySpec DensitySpec::fromDensity(std::function<double(double)> f, QuadratureRule rule,
                                     std::vector<double> breakpointsInU) {
  DensitySpec spec;
  spec.logDensity = [f = std::move(f)](double t) {
    const double v = f(std::exp(t));
    return v == 0.0 ? 0.0 : v * std::exp(t);
  };
  for (double u : breakpointsInU) {
    if (u > 1.0) spec.breakpoints.push_back(std::log(u));
  }
  spec.rule = rule;
  return spec;
}

DensitySpec DensitySpec::fromLogDensity(std::function<double(double)> phi, QuadratureRule rule,
                                        std::vector<double> breakpoints) {
  DensitySpec spec;
  spec.logDensity = std::move(phi);
  spec.breakpoints = std::move(breakpoints);
  spec.rule = rule;
  return spec;
}

MeasureD discretize(const DensitySpec& spec, const LogGrid& grid) {
  const Eigen::Index n = grid.n();
  const double h = grid.h();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(n);

  if (spec.logDensity) {
    std::vector<double> breaks;
    for (double b : spec.breakpoints) {
      if (b > 0.0) breaks.push_back(b);
    }
    std::sort(breaks.begin(), breaks.end());
    const auto& phi = spec.logDensity;

    // Integral over [lo, hi) split at interior breakpoints.
    auto pieces = [&](double lo, double hi, Eigen::Index k) {
      double sum = 0.0;
      double a = lo;
      auto it = std::upper_bound(breaks.begin(), breaks.end(), lo);
      try {
        for (; it != breaks.end() && *it < hi; ++it) {
          sum += integrateAdaptive(phi, a, *it);
          a = *it;
        }
        sum += integrateAdaptive(phi, a, hi);
      } catch (const IntegrationFailure& e) {
        throw IntegrationFailure(std::string(e.what()) + " (lattice cell " + std::to_string(k) + ")",
                                 k);
      }
      return sum;
    };
    auto hasBreakInside = [&](double lo, double hi) {
      auto it = std::upper_bound(breaks.begin(), breaks.end(), lo);
      return it != breaks.end() && *it < hi;
    };

    for (Eigen::Index k = 1; k < n; ++k) {
      const double mid = grid.logPoint(k);
      double lo = mid - 0.5 * h;
      const double hi = mid + 0.5 * h;
      if (spec.rule == QuadratureRule::Adaptive) {
        if (k == 1) lo = 0.0;
        c[k] = pieces(lo, hi, k);
      } else if (hasBreakInside(lo, hi)) {
        c[k] = pieces(lo, hi, k);
      } else {
        const double v = h * phi(mid);
        if (!std::isfinite(v)) {
          throw IntegrationFailure("discretize: non-finite density at lattice cell " +
                                       std::to_string(k),
                                   k);
        }
        c[k] = v;
      }
    }
  }

  for (const auto& atom : spec.atoms) {
    if (!(atom.u >= 1.0)) {
      throw InvalidArgument("discretize: atom location must satisfy u >= 1, got " +
                            std::to_string(atom.u));
    }
    const Eigen::Index k = grid.nearestIndex(std::log(atom.u));
    if (k < n) c[k] += atom.mass;
  }
  return MeasureD(grid, std::move(c));
}

}  // namespace beurling
