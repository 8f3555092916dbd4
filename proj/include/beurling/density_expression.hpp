#pragma once

#include <memory>
#include <string>
#include <vector>

#include "beurling/discretize.hpp"

namespace beurling {

namespace detail {
struct ExpressionNode;
}

/// Compiled density expression f(u).
///
/// Grammar (whitespace ignored):
///
///     expr    := term (('+' | '-') term)*
///     term    := unary (('*' | '/') unary)*
///     unary   := ('-' | '+') unary | power
///     power   := primary ('^' unary)?
///     primary := number | 'u' | 'e' | 'pi' | '(' expr ')'
///              | ('log' | 'loglog' | 'exp' | 'sqrt' | 'abs') '(' expr ')'
///              | 'indicator' '(' expr ')'
///
/// indicator(a) is 1 for u >= a and 0 otherwise; its argument must not
/// depend on u, and log(a) is recorded as a breakpoint for discretization.
/// A product or quotient whose left factor is exactly zero evaluates to zero,
/// so `indicator(e^e)/(log(u)*loglog(u))` is well defined below e^e.
class DensityExpression {
 public:
  static DensityExpression parse(const std::string& text);

  double operator()(double u) const;
  const std::string& text() const noexcept { return text_; }
  /// Indicator thresholds, in u.
  const std::vector<double>& thresholds() const noexcept { return thresholds_; }

  /// Density spec for f(u) du with breakpoints at the indicator thresholds.
  DensitySpec toDensitySpec(QuadratureRule rule = QuadratureRule::Adaptive) const;

 private:
  DensityExpression() = default;

  std::string text_;
  std::shared_ptr<const detail::ExpressionNode> root_;
  std::vector<double> thresholds_;
};

}  // namespace beurling
