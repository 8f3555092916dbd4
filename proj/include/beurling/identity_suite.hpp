#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "beurling/convolution.hpp"

namespace beurling {

struct IdentityCheck {
  std::string name;
  double deviation = 0.0;  ///< worst case over all samples, scaled as documented
  double tolerance = 0.0;
  bool passed = false;
};

struct IdentitySuiteOptions {
  int samples = 100;
  Eigen::Index n = 256;
  double h = 0.01;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;
  Algorithm algorithm = Algorithm::Auto;
};

/// Algebra laws on seeded random measures with coefficients uniform in
/// [-1, 1]. Deviations are measured against the coefficient-wise envelope
/// obtained by running the same expression on variation(.) inputs, which
/// bounds the rounding error of a signed computation. The log round trip
/// uses inputs scaled by 0.1 and is measured against |X|. The inverse law
/// is checked on exp*(A), whose mass at u = 1 is bounded away from zero. Positivity and
/// domination are exact checks (deviation 0 or 1).
std::vector<IdentityCheck> runIdentitySuite(const IdentitySuiteOptions& options = {});

}  // namespace beurling
