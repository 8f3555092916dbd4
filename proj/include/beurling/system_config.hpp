#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "beurling/number_systems.hpp"

namespace beurling {

/// Parsed system config file. Schema, one `key = value` per line, '#'
/// starts a comment:
///
///     base         li | classical | kahane | custom     (default li)
///     grid.h       lattice step in log u                (default 1e-3)
///     grid.n       number of lattice points             (default 1001)
///     sieve_limit  classical base only                  (default 1e8)
///     base.density density expression, custom base only
///     e.density    density expression for dE
///     r.density    density expression for dR
///     quadrature   adaptive | midpoint                  (default adaptive)
///     a            exponent of the M_0 bound            (default 1)
///     sigma0       optional exponent for int |dR|/u^sigma0
///
/// Densities use the DensityExpression grammar.
struct SystemConfig {
  SystemSpec spec;
  double a = 1.0;
  std::optional<double> sigma0;
};

/// Throws ConfigError with the offending line.
SystemConfig parseSystemConfig(std::istream& in);
SystemConfig loadSystemConfig(const std::string& path);

}  // namespace beurling
