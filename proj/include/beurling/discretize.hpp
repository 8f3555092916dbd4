#pragma once

#include <functional>
#include <vector>

#include "beurling/measure.hpp"

namespace beurling {

struct PointAtom {
  double u;     ///< location, u >= 1
  double mass;
};

/// How absolutely continuous mass is assigned to lattice points.
///
/// Cells are [(k-1/2)h, (k+1/2)h) in log u, k >= 1.
///  - Midpoint: c_k = h * phi(k h), the midpoint rule in log u. For
///    f(u) = (1 - 1/u)/log u it reproduces the lattice identity
///    exp*(-dPi) = delta_1 - (e^h - 1) sum_{k>=1} delta_{u_k} exactly.
///    The initial half cell [0, h/2) carries no mass (an O(h) defect).
///  - Adaptive: c_k is the cell integral by adaptive Gauss-Kronrod; the
///    initial half cell is folded into cell 1 so the total mass on [1, X]
///    matches the integral.
/// Under both rules a cell that contains a breakpoint is integrated
/// piecewise, which gives exact partial mass at a jump. Index 0 only ever
/// receives atoms located at u = 1: a density puts no mass at u = 1 itself.
enum class QuadratureRule { Midpoint, Adaptive };

/// Declarative description of a measure f(u) du + sum of atoms.
///
/// The density is carried as phi(t) = f(e^t) e^t, the mass per unit of
/// log u, so that it stays representable where f(u) under- or overflows.
struct DensitySpec {
  std::function<double(double)> logDensity;  ///< phi(t); empty for no density
  std::vector<PointAtom> atoms;
  std::vector<double> breakpoints;  ///< values of log u where phi may jump
  QuadratureRule rule = QuadratureRule::Adaptive;

  /// Wraps a density in u: phi(t) = f(e^t) e^t.
  static DensitySpec fromDensity(std::function<double(double)> f,
                                 QuadratureRule rule = QuadratureRule::Adaptive,
                                 std::vector<double> breakpointsInU = {});
  /// Wraps a density in t = log u directly.
  static DensitySpec fromLogDensity(std::function<double(double)> phi,
                                    QuadratureRule rule = QuadratureRule::Adaptive,
                                    std::vector<double> breakpoints = {});
};

/// Projects a density spec onto the lattice. Atoms are snapped to the
/// nearest lattice point in log scale (displacement at most h/2); atoms past
/// the grid end are dropped.
MeasureD discretize(const DensitySpec& spec, const LogGrid& grid);

/// Adaptive Gauss-Kronrod (7/15) integral of f over [a, b]. Throws
/// IntegrationFailure (cell -1) on a non-finite sample or when the error
/// target is not met.
double integrateAdaptive(const std::function<double(double)>& f, double a, double b,
                         double relTol = 1e-12, int maxDepth = 40);

}  // namespace beurling
