#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "beurling/detail/fft_convolver.hpp"
#include "beurling/detail/relaxed_solver.hpp"
#include "beurling/measure.hpp"

namespace beurling {

/// Algorithm selector for the convolution algebra. Auto picks the FFT
/// routes above the thresholds below.
enum class Algorithm { Auto, Direct, Fft };

inline constexpr Eigen::Index kFftConvolveThreshold = 2048;
inline constexpr Eigen::Index kFftSeriesThreshold = 8192;

namespace detail {

inline bool useFft(Algorithm alg, Eigen::Index n, Eigen::Index threshold) {
  switch (alg) {
    case Algorithm::Direct: return false;
    case Algorithm::Fft: return true;
    case Algorithm::Auto: break;
  }
  return n >= threshold;
}

// Exponential growth per lattice index of |v|, estimated from the largest
// magnitudes in the first and last sixteenth of the support (index 0
// excluded). FFT routes work on v_k e^{-rate k} so that the balanced
// sequence keeps FFT round-off proportional to the coefficients that matter.
template <typename Vec>
double growthRate(const Vec& v) {
  const Eigen::Index n = v.size();
  Eigen::Index first = 1;
  while (first < n && v[first] == 0) ++first;
  const Eigen::Index span = n - first;
  if (span < 32) return 0.0;
  const Eigen::Index block = std::max<Eigen::Index>(1, span / 16);
  double head = 0.0, tail = 0.0;
  for (Eigen::Index k = first; k < first + block; ++k) {
    head = std::max(head, std::abs(static_cast<double>(v[k])));
  }
  for (Eigen::Index k = n - block; k < n; ++k) {
    tail = std::max(tail, std::abs(static_cast<double>(v[k])));
  }
  if (head == 0.0 || tail == 0.0) return 0.0;
  return std::max(0.0, std::log(tail / head) / static_cast<double>(span - block));
}

template <typename Vec>
std::vector<typename Vec::Scalar> twisted(const Vec& v, double rate) {
  std::vector<typename Vec::Scalar> out(static_cast<std::size_t>(v.size()));
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    out[static_cast<std::size_t>(k)] =
        rate == 0.0 ? v[k] : v[k] * typename Vec::Scalar(std::exp(-rate * double(k)));
  }
  return out;
}

// Undoes twisted() for data whose local index 0 sits at index `offset`.
template <typename Scalar>
Measure<Scalar> untwist(const LogGrid& grid, const std::vector<Scalar>& v, double rate,
                        const char* op, Eigen::Index offset = 0) {
  typename Measure<Scalar>::Vector out(grid.n());
  for (Eigen::Index k = 0; k < grid.n(); ++k) {
    const Scalar x = rate == 0.0 || k < offset
                         ? v[static_cast<std::size_t>(k)]
                         : v[static_cast<std::size_t>(k)] *
                               Scalar(std::exp(rate * double(k - offset)));
    if (!std::isfinite(static_cast<double>(x))) {
      throw Overflow(std::string(op) + ": coefficient overflow at index " + std::to_string(k), k);
    }
    out[k] = x;
  }
  return Measure<Scalar>(grid, std::move(out));
}

template <typename Scalar, typename Finalize>
std::vector<Scalar> solveSeries(const std::vector<Scalar>& kernel, Scalar first, bool fft,
                                Finalize&& finalize) {
  return fft ? solveFft(kernel, first, finalize) : solveDirect(kernel, first, finalize);
}

}  // namespace detail

/// Multiplicative convolution on the lattice: c_m = sum_{j+k=m} a_j b_k for
/// m < n, everything at or beyond index n dropped.
///
/// The direct route pairs a_j b_{m-j} with a_{m-j} b_j before accumulating in
/// ascending j, which makes convolve(a, b) and convolve(b, a) bitwise equal.
/// The FFT route is symmetric in its arguments as well.
template <typename Scalar>
Measure<Scalar> convolve(const Measure<Scalar>& a, const Measure<Scalar>& b,
                         Algorithm alg = Algorithm::Auto) {
  requireSameGrid(a.grid(), b.grid(), "convolve");
  const Eigen::Index n = a.size();
  if (!detail::useFft(alg, n, kFftConvolveThreshold)) {
    typename Measure<Scalar>::Vector c(n);
    const auto& x = a.coeffs();
    const auto& y = b.coeffs();
    for (Eigen::Index m = 0; m < n; ++m) {
      Scalar s(0);
      Eigen::Index j = 0;
      for (; 2 * j < m; ++j) s += x[j] * y[m - j] + x[m - j] * y[j];
      if (2 * j == m) s += x[j] * y[j];
      c[m] = s;
    }
    return Measure<Scalar>(a.grid(), std::move(c));
  }
  // Leading zeros are stripped so the result keeps its exact zero head.
  auto leadingZeros = [n](const auto& v) {
    Eigen::Index z = 0;
    while (z < n && v[z] == Scalar(0)) ++z;
    return z;
  };
  const Eigen::Index za = leadingZeros(a.coeffs()), zb = leadingZeros(b.coeffs());
  if (za + zb >= n) return Measure<Scalar>(a.grid());
  const Eigen::Index len = n - za - zb;
  using Vec = typename Measure<Scalar>::Vector;
  const Vec sa = a.coeffs().segment(za, len), sb = b.coeffs().segment(zb, len);
  const double rate = std::max(detail::growthRate(sa), detail::growthRate(sb));
  const auto ta = detail::twisted(sa, rate);
  const auto tb = detail::twisted(sb, rate);
  std::vector<Scalar> tc(static_cast<std::size_t>(n), Scalar(0));
  detail::FftConvolver<Scalar> conv;
  conv.linear(ta.data(), len, tb.data(), len, tc.data() + (za + zb), len);
  return detail::untwist(a.grid(), tc, rate, "convolve", za + zb);
}

/// exp*(A) = sum_m A^{*m}/m!, truncated to the grid.
///
/// Computed from L exp*(A) = (L A) * exp*(A): e_0 = exp(a_0) and
/// m e_m = sum_{k=1}^m k a_k e_{m-k} (the lattice step cancels). The direct
/// route evaluates this recurrence literally; the FFT route solves the same
/// recurrence by divide and conquer.
template <typename Scalar>
Measure<Scalar> expStar(const Measure<Scalar>& a, Algorithm alg = Algorithm::Auto) {
  const Eigen::Index n = a.size();
  const bool fft = detail::useFft(alg, n, kFftSeriesThreshold);
  const double rate = fft ? detail::growthRate(a.coeffs()) : 0.0;
  std::vector<Scalar> kernel = detail::twisted(a.coeffs(), rate);
  for (Eigen::Index k = 0; k < n; ++k) kernel[static_cast<std::size_t>(k)] *= Scalar(double(k));
  const Scalar e0 = std::exp(a[0]);
  if (!std::isfinite(static_cast<double>(e0))) throw Overflow("expStar: overflow at index 0", 0);
  const auto e = detail::solveSeries(kernel, e0, fft, [](std::size_t m, Scalar s) {
    return s / Scalar(double(m));
  });
  return detail::untwist(a.grid(), e, rate, "expStar");
}

/// Convolution inverse: r_0 = 1/a_0, r_m = -(1/a_0) sum_{k=1}^m a_k r_{m-k}.
template <typename Scalar>
Measure<Scalar> invert(const Measure<Scalar>& a, Algorithm alg = Algorithm::Auto) {
  const Scalar a0 = a[0];
  if (a0 == Scalar(0)) throw NotInvertible("invert: mass at u = 1 is zero");
  const Eigen::Index n = a.size();
  const bool fft = detail::useFft(alg, n, kFftSeriesThreshold);
  const double rate = fft ? detail::growthRate(a.coeffs()) : 0.0;
  const std::vector<Scalar> kernel = detail::twisted(a.coeffs(), rate);
  const auto r = detail::solveSeries(kernel, Scalar(1) / a0, fft, [a0](std::size_t, Scalar s) {
    return -s / a0;
  });
  return detail::untwist(a.grid(), r, rate, "invert");
}

/// Logarithm in the convolution algebra, the inverse of expStar. Uses
/// L A = (L log*A) * A solved for w_k = k l_k:
/// w_k a_0 = k a_k - sum_{j=1}^{k-1} w_j a_{k-j}.
template <typename Scalar>
Measure<Scalar> logStar(const Measure<Scalar>& a, Algorithm alg = Algorithm::Auto) {
  const Scalar a0 = a[0];
  if (!(a0 > Scalar(0))) throw NoLogarithm("logStar: mass at u = 1 must be positive");
  const Eigen::Index n = a.size();
  const bool fft = detail::useFft(alg, n, kFftSeriesThreshold);
  const double rate = fft ? detail::growthRate(a.coeffs()) : 0.0;
  const std::vector<Scalar> kernel = detail::twisted(a.coeffs(), rate);
  auto w = detail::solveSeries(kernel, Scalar(0), fft, [&kernel, a0](std::size_t k, Scalar s) {
    return (Scalar(double(k)) * kernel[k] - s) / a0;
  });
  w[0] = std::log(a0);
  for (std::size_t k = 1; k < w.size(); ++k) w[k] /= Scalar(double(k));
  return detail::untwist(a.grid(), w, rate, "logStar");
}

/// exp*(|A|), the coefficient-wise envelope of exp*(A).
template <typename Scalar>
Measure<Scalar> expStarEnvelope(const Measure<Scalar>& a, Algorithm alg = Algorithm::Auto) {
  return expStar(variation(a), alg);
}

/// Cancellation monitor: largest envelope_k / |value_k| over coefficients
/// whose envelope is non-negligible (above 1e-300). Values near 1 mean the
/// signed result is as accurate as the absolute one; a ratio of 10^p means
/// about p decimal digits were lost to cancellation.
template <typename Scalar>
double cancellationRatio(const Measure<Scalar>& value, const Measure<Scalar>& envelope) {
  requireSameGrid(value.grid(), envelope.grid(), "cancellationRatio");
  double worst = 1.0;
  for (Eigen::Index k = 0; k < value.size(); ++k) {
    const double env = std::abs(static_cast<double>(envelope[k]));
    if (env < 1e-300) continue;
    const double v = std::abs(static_cast<double>(value[k]));
    worst = std::max(worst, v == 0.0 ? std::numeric_limits<double>::infinity() : env / v);
  }
  return worst;
}

}  // namespace beurling
