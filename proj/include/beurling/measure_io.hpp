#pragma once

#include <iosfwd>
#include <string>

#include "beurling/measure.hpp"

namespace beurling {

/// Text format, version 1:
///
///     # beurling-measure v1
///     h=<float>,n=<int>
///     <c_0>
///     ...
///     <c_{n-1}>
///
/// Coefficients carry 17 significant digits, so a write/read round trip is
/// bit-exact. Lines starting with '#' are comments.
void writeMeasure(std::ostream& out, const MeasureD& a);
MeasureD readMeasure(std::istream& in);

void saveMeasure(const std::string& path, const MeasureD& a);
MeasureD loadMeasure(const std::string& path);

/// "%.17g".
std::string formatDouble(double x);
/// Whole-string parse; throws ConfigError naming `what`.
double parseDouble(const std::string& text, const std::string& what);
long long parseInteger(const std::string& text, const std::string& what);

}  // namespace beurling
