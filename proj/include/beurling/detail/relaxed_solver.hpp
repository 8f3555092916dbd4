#pragma once

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "beurling/detail/fft_convolver.hpp"

namespace beurling::detail {

// Solves triangular recurrences of the form
//
//   e_0 = first,   e_m = finalize(m, s_m),   s_m = sum_{j<m} kernel[m-j] e_j,
//
// which covers exp* (kernel k a_k), the convolution inverse (kernel a_k) and
// log* (kernel a_k, unknowns k l_k).

// Quadratic reference path; s_m accumulated with k = 1..m ascending.
template <typename Scalar, typename Finalize>
std::vector<Scalar> solveDirect(const std::vector<Scalar>& kernel, Scalar first,
                                Finalize&& finalize) {
  const std::size_t n = kernel.size();
  std::vector<Scalar> e(n, Scalar(0));
  if (n == 0) return e;
  e[0] = first;
  for (std::size_t m = 1; m < n; ++m) {
    Scalar s(0);
    for (std::size_t k = 1; k <= m; ++k) s += kernel[k] * e[m - k];
    e[m] = finalize(m, s);
  }
  return e;
}

// Divide and conquer over a power-of-two range. The left half of each block
// is pushed into the right half with one cyclic FFT of the block size (the
// wrapped terms land in the discarded left half). Leaves of kLeaf entries run
// the quadratic sum with j ascending. Cost O(n log^2 n).
template <typename Scalar, typename Finalize>
class RelaxedFftSolver {
 public:
  using Index = Eigen::Index;
  static constexpr Index kLeaf = 64;

  RelaxedFftSolver(const std::vector<Scalar>& kernel, Finalize& finalize)
      : kernel_(kernel), finalize_(finalize), n_(static_cast<Index>(kernel.size())) {}

  std::vector<Scalar> run(Scalar first) {
    e_.assign(static_cast<std::size_t>(n_), Scalar(0));
    acc_.assign(static_cast<std::size_t>(n_), Scalar(0));
    if (n_ == 0) return e_;
    padded_ = std::vector<Scalar>(kernel_.begin(), kernel_.end());
    Index top = kLeaf;
    while (top < n_) top <<= 1;
    padded_.resize(static_cast<std::size_t>(top), Scalar(0));
    padded_[0] = Scalar(0);
    first_ = first;
    solve(0, top);
    return e_;
  }

 private:
  void leaf(Index l, Index r) {
    for (Index m = l; m < r && m < n_; ++m) {
      if (m == 0) {
        e_[0] = first_;
        continue;
      }
      Scalar s = acc_[m];
      for (Index j = l; j < m; ++j) s += kernel_[m - j] * e_[j];
      e_[m] = finalize_(static_cast<std::size_t>(m), s);
    }
  }

  void solve(Index l, Index r) {
    if (l >= n_) return;
    if (r - l <= kLeaf) {
      leaf(l, r);
      return;
    }
    const Index mid = l + (r - l) / 2;
    solve(l, mid);
    if (mid < n_) {
      const Index len = r - l;
      const auto& fk = conv_.kernelSpectrum(padded_.data(), len, len);
      const auto fx = conv_.spectrum(e_.data() + l, mid - l, len);
      out_.resize(static_cast<std::size_t>(len));
      conv_.cyclicFromSpectra(fx, fk, len, out_.data());
      for (Index m = mid; m < r && m < n_; ++m) acc_[m] += out_[m - l];
    }
    solve(mid, r);
  }

  const std::vector<Scalar>& kernel_;
  Finalize& finalize_;
  Index n_;
  Scalar first_{0};
  std::vector<Scalar> padded_;
  std::vector<Scalar> e_;
  std::vector<Scalar> acc_;
  std::vector<Scalar> out_;
  FftConvolver<Scalar> conv_;
};

template <typename Scalar, typename Finalize>
std::vector<Scalar> solveFft(const std::vector<Scalar>& kernel, Scalar first,
                             Finalize&& finalize) {
  RelaxedFftSolver<Scalar, std::remove_reference_t<Finalize>> solver(kernel, finalize);
  return solver.run(first);
}

}  // namespace beurling::detail
