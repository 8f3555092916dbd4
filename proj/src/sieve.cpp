#include "beurling/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace beurling {

namespace {

std::vector<std::uint32_t> smallPrimes(std::uint64_t limit) {
  std::vector<char> composite(limit + 1, 0);
  std::vector<std::uint32_t> primes;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    primes.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return primes;
}

}  // namespace

void forEachPrime(std::uint64_t limit, const std::function<void(std::uint64_t)>& visit) {
  if (limit < 2) return;
  visit(2);
  if (limit < 3) return;

  std::uint64_t root = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(limit)));
  while (root * root > limit) --root;
  while ((root + 1) * (root + 1) <= limit) ++root;
  const auto base = smallPrimes(root);

  // Segment entry i stands for the odd number low + 2 i.
  constexpr std::uint64_t kSegment = 1u << 18;
  std::vector<char> composite(kSegment);
  // Next odd multiple of each odd base prime still to be crossed off.
  std::vector<std::uint64_t> next;
  next.reserve(base.size());
  for (std::uint32_t p : base) {
    if (p != 2) next.push_back(std::uint64_t(p) * p);
  }

  for (std::uint64_t low = 3; low <= limit; low += 2 * kSegment) {
    const std::uint64_t high = std::min(limit, low + 2 * kSegment - 1);
    const std::uint64_t count = (high - low) / 2 + 1;
    std::fill(composite.begin(), composite.begin() + static_cast<std::ptrdiff_t>(count), 0);
    std::size_t idx = 0;
    for (std::uint32_t p : base) {
      if (p == 2) continue;
      std::uint64_t& m = next[idx++];
      for (; m <= high; m += 2 * std::uint64_t(p)) composite[(m - low) / 2] = 1;
    }
    for (std::uint64_t i = 0; i < count; ++i) {
      if (!composite[i]) visit(low + 2 * i);
    }
  }
}

std::uint64_t countPrimes(std::uint64_t limit) {
  std::uint64_t count = 0;
  forEachPrime(limit, [&count](std::uint64_t) { ++count; });
  return count;
}

std::pair<std::uint64_t, std::uint64_t> PrimePowerCensus::totalAsFraction() const {
  std::uint64_t num = 0, den = 1;
  for (std::size_t j = 1; j < countByExponent.size(); ++j) {
    // num/den + c/j
    const std::uint64_t c = countByExponent[j];
    const std::uint64_t l = std::lcm(den, std::uint64_t(j));
    num = num * (l / den) + c * (l / j);
    den = l;
    const std::uint64_t g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  return {num, den};
}

double PrimePowerCensus::total() const {
  double s = 0.0;
  for (std::size_t j = 1; j < countByExponent.size(); ++j) {
    s += static_cast<double>(countByExponent[j]) / static_cast<double>(j);
  }
  return s;
}

}  // namespace beurling
