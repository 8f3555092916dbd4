#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <vector>

#include <Eigen/Core>
#include <unsupported/Eigen/FFT>

namespace beurling::detail {

inline Eigen::Index nextPow2(Eigen::Index v) {
  Eigen::Index p = 4;
  while (p < v) p <<= 1;
  return p;
}

// Real linear/cyclic convolution on top of Eigen's FFT. Not thread-safe: the
// Eigen::FFT object keeps plan and scratch buffers, so every top-level
// operation owns its own convolver.
template <typename Scalar>
class FftConvolver {
 public:
  using Index = Eigen::Index;
  using Complex = std::complex<Scalar>;
  using Spectrum = std::vector<Complex>;

  FftConvolver() { fft_.SetFlag(Eigen::FFT<Scalar>::HalfSpectrum); }

  // Half spectrum of x[0..len) zero-padded to size N (a power of two >= 4).
  Spectrum spectrum(const Scalar* x, Index len, Index N) {
    buf_.assign(static_cast<std::size_t>(N), Scalar(0));
    std::copy(x, x + std::min(len, N), buf_.begin());
    Spectrum out(static_cast<std::size_t>(N / 2 + 1));
    fft_.fwd(out.data(), buf_.data(), N);
    return out;
  }

  // Cyclic convolution of size N given both half spectra; writes N values.
  void cyclicFromSpectra(const Spectrum& fa, const Spectrum& fb, Index N, Scalar* out) {
    prod_.resize(fa.size());
    for (std::size_t i = 0; i < fa.size(); ++i) prod_[i] = fa[i] * fb[i];
    fft_.inv(out, prod_.data(), N);
  }

  // out[i] = sum_{j+k=i} a[j] b[k] for i < outLen.
  void linear(const Scalar* a, Index la, const Scalar* b, Index lb, Scalar* out, Index outLen) {
    la = std::min(la, outLen);
    lb = std::min(lb, outLen);
    const Index N = nextPow2(la + lb - 1);
    const Spectrum fa = spectrum(a, la, N);
    const Spectrum fb = spectrum(b, lb, N);
    full_.resize(static_cast<std::size_t>(N));
    cyclicFromSpectra(fa, fb, N, full_.data());
    std::copy(full_.begin(), full_.begin() + std::min(outLen, N), out);
    if (outLen > N) std::fill(out + N, out + outLen, Scalar(0));
  }

  // Cached spectrum of a fixed kernel prefix, keyed by transform size.
  const Spectrum& kernelSpectrum(const Scalar* kernel, Index len, Index N) {
    auto it = kernelCache_.find(N);
    if (it == kernelCache_.end()) {
      it = kernelCache_.emplace(N, spectrum(kernel, std::min(len, N), N)).first;
    }
    return it->second;
  }

 private:
  Eigen::FFT<Scalar> fft_;
  std::vector<Scalar> buf_;
  std::vector<Scalar> full_;
  Spectrum prod_;
  std::map<Index, Spectrum> kernelCache_;
};

}  // namespace beurling::detail
