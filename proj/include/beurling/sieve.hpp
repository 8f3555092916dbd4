#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace beurling {

/// Calls visit(p) for every prime p <= limit in increasing order, using a
/// segmented sieve of Eratosthenes over odd numbers (segments of 256 KiB).
void forEachPrime(std::uint64_t limit, const std::function<void(std::uint64_t)>& visit);

/// pi(limit).
std::uint64_t countPrimes(std::uint64_t limit);

/// Number of prime powers p^j <= limit, by exponent j.
///
/// Riemann's prime-power function is sum_j count(j) / j; keeping the counts
/// lets totals be compared as exact rationals.
struct PrimePowerCensus {
  std::uint64_t limit = 0;
  std::vector<std::uint64_t> countByExponent;  ///< index j >= 1; entry 0 unused

  /// sum_j count(j)/j as a reduced fraction numerator/denominator.
  std::pair<std::uint64_t, std::uint64_t> totalAsFraction() const;
  double total() const;

  friend bool operator==(const PrimePowerCensus&, const PrimePowerCensus&) = default;
};

}  // namespace beurling
