#include "mmohocc/fft.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mmohocc {

namespace {

using cd = std::complex<double>;

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

/// In-place iterative radix-2 DIT transform. `twiddles` holds
/// e^{-2pi i j / size} for j = 0..size/2-1; `bitrev` the permutation.
void fft_pow2(std::vector<cd>& a, const std::vector<cd>& twiddles,
              const std::vector<std::uint32_t>& bitrev, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = bitrev[i];
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t stride = n / len;
    const std::size_t half = len / 2;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        cd w = twiddles[k * stride];
        if (inverse) w = std::conj(w);
        const cd odd = a[start + k + half] * w;
        const cd even = a[start + k];
        a[start + k] = even + odd;
        a[start + k + half] = even - odd;
      }
    }
  }
  if (inverse) {
    const double scale = 1.0 / static_cast<double>(n);
    for (cd& v : a) v *= scale;
  }
}

}  // namespace

SpectralDft::SpectralDft(std::size_t n) : n_(n), half_(n / 2) {
  if (n < 2 || n % 2 != 0) {
    throw std::invalid_argument("SpectralDft requires an even length >= 2");
  }
  half_pow2_ = std::has_single_bit(half_);
  conv_size_ = half_pow2_ ? half_ : next_pow2(2 * half_ - 1);

  twiddles_.resize(conv_size_ / 2);
  for (std::size_t j = 0; j < conv_size_ / 2; ++j) {
    const double ang = -2.0 * std::numbers::pi * static_cast<double>(j) /
                       static_cast<double>(conv_size_);
    twiddles_[j] = std::polar(1.0, ang);
  }
  bitrev_.resize(conv_size_);
  const int bits = std::countr_zero(conv_size_);
  for (std::size_t i = 0; i < conv_size_; ++i) {
    std::size_t r = 0;
    for (int b = 0; b < bits; ++b) r |= ((i >> b) & 1u) << (bits - 1 - b);
    bitrev_[i] = static_cast<std::uint32_t>(r);
  }

  if (!half_pow2_) {
    // Chirp angles via j^2 mod 2m kept in integers, so large j stays exact.
    chirp_.resize(half_);
    const std::uint64_t two_m = 2 * static_cast<std::uint64_t>(half_);
    for (std::size_t j = 0; j < half_; ++j) {
      const std::uint64_t sq = (static_cast<std::uint64_t>(j) * j) % two_m;
      const double ang = -std::numbers::pi * static_cast<double>(sq) /
                         static_cast<double>(half_);
      chirp_[j] = std::polar(1.0, ang);
    }
    std::vector<cd> filter(conv_size_, cd{0.0, 0.0});
    filter[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < half_; ++j) {
      filter[j] = std::conj(chirp_[j]);
      filter[conv_size_ - j] = std::conj(chirp_[j]);
    }
    fft_pow2(filter, twiddles_, bitrev_, false);
    filter_fft_ = std::move(filter);
  }

  unpack_.resize(half_ + 1);
  for (std::size_t k = 0; k <= half_; ++k) {
    const double ang =
        -2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n_);
    unpack_[k] = std::polar(1.0, ang);
  }
}

void SpectralDft::half_fft(std::vector<cd>& z) const {
  if (half_pow2_) {
    fft_pow2(z, twiddles_, bitrev_, false);
    return;
  }
  // Bluestein: Z_k = chirp_k * IFFT(FFT(z .* chirp) .* filter_fft)_k
  std::vector<cd> work(conv_size_, cd{0.0, 0.0});
  for (std::size_t j = 0; j < half_; ++j) work[j] = z[j] * chirp_[j];
  fft_pow2(work, twiddles_, bitrev_, false);
  for (std::size_t j = 0; j < conv_size_; ++j) work[j] *= filter_fft_[j];
  fft_pow2(work, twiddles_, bitrev_, true);
  for (std::size_t k = 0; k < half_; ++k) z[k] = work[k] * chirp_[k];
}

void SpectralDft::magnitudes(std::span<const double> input,
                             std::span<double> out) const {
  if (input.size() != n_ || out.size() != half_) {
    throw std::invalid_argument("SpectralDft buffer size mismatch");
  }
  std::vector<cd> z(half_);
  for (std::size_t j = 0; j < half_; ++j) {
    z[j] = cd{input[2 * j], input[2 * j + 1]};
  }
  half_fft(z);
  // Split the packed transform into the even/odd spectra and recombine.
  for (std::size_t k = 0; k < half_; ++k) {
    const cd zk = z[k];
    const cd zmk = std::conj(z[(half_ - k) % half_]);
    const cd even = 0.5 * (zk + zmk);
    const cd odd = cd{0.0, -0.5} * (zk - zmk);
    out[k] = std::abs(even + unpack_[k] * odd);
  }
}

}  // namespace mmohocc
