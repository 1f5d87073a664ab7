// Exact-length DFT machinery for the spectral test: real input of any even
// length n, producing |X_k| for k = 0..n/2-1. Power-of-two lengths go
// through an iterative radix-2 transform; everything else through Bluestein's
// chirp-z reduction onto a power-of-two convolution. Tables are built once
// per length and may be shared across threads (magnitudes() is const and
// thread-safe).
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mmohocc {

class SpectralDft {
 public:
  /// Builds tables for real input of length n (n >= 2, n even).
  explicit SpectralDft(std::size_t n);

  std::size_t length() const noexcept { return n_; }

  /// Magnitudes |X_k|, k = 0..n/2-1, of the DFT of `input` (size n).
  void magnitudes(std::span<const double> input, std::span<double> out) const;

 private:
  void half_fft(std::vector<std::complex<double>>& z) const;

  std::size_t n_ = 0;
  std::size_t half_ = 0;
  bool half_pow2_ = false;

  // Radix-2 plan for size conv_size_ (== half_ when half_ is a power of two).
  std::size_t conv_size_ = 0;
  std::vector<std::complex<double>> twiddles_;  // e^{-2pi i j / conv_size_}
  std::vector<std::uint32_t> bitrev_;

  // Bluestein tables (empty when half_ is a power of two).
  std::vector<std::complex<double>> chirp_;       // e^{-i pi j^2 / half_}
  std::vector<std::complex<double>> filter_fft_;  // FFT of the chirp filter

  std::vector<std::complex<double>> unpack_;  // e^{-2pi i k / n}, k = 0..half_
};

}  // namespace mmohocc
