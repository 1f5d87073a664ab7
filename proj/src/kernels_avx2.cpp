// AVX2 kernel variants. This translation unit is compiled with -mavx2 and is
// only entered after a runtime CPU check, so the rest of the library keeps
// its baseline ISA.
#include "kernel_table.hpp"

#if defined(__AVX2__) && (defined(__x86_64__) || defined(_M_X64))

#include <immintrin.h>

#include <bit>

namespace mmohocc::kernels::detail {
namespace {

inline __m256i popcount_epi8(__m256i v) noexcept {
  const __m256i lut =
      _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4, 0, 1, 1,
                       2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low = _mm256_set1_epi8(0x0F);
  const __m256i lo = _mm256_and_si256(v, low);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
  return _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo),
                         _mm256_shuffle_epi8(lut, hi));
}

inline std::uint64_t hsum_sad(__m256i byte_counts) noexcept {
  const __m256i sad = _mm256_sad_epu8(byte_counts, _mm256_setzero_si256());
  return static_cast<std::uint64_t>(_mm256_extract_epi64(sad, 0)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(sad, 1)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(sad, 2)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(sad, 3));
}

std::uint64_t ones_count_avx2(const std::uint8_t* data, std::size_t bit_count) noexcept {
  const std::size_t full_bytes = bit_count / 8;
  std::uint64_t total = 0;
  std::size_t i = 0;
  for (; i + 32 <= full_bytes; i += 32) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
    total += hsum_sad(popcount_epi8(v));
  }
  for (; i < full_bytes; ++i) total += std::popcount(data[i]);
  const unsigned tail = bit_count % 8;
  if (tail != 0) {
    const auto masked =
        static_cast<std::uint8_t>(data[full_bytes] & (0xFF << (8 - tail)));
    total += std::popcount(masked);
  }
  return total;
}

std::uint64_t transition_count_avx2(const std::uint8_t* data,
                                    std::size_t bit_count) noexcept {
  if (bit_count < 2) return 0;
  const std::size_t full_bytes = bit_count / 8;
  std::uint64_t total = 0;
  std::size_t i = 0;
  unsigned prev = 0;
  bool have_prev = false;
  for (; i + 32 <= full_bytes; i += 32) {
    const __m256i b =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(data + i));
    // Pairs inside each byte: bit k vs bit k-1 for k = 7..1.
    const __m256i shifted = _mm256_add_epi8(b, b);
    const __m256i intra = _mm256_and_si256(_mm256_xor_si256(b, shifted),
                                           _mm256_set1_epi8(static_cast<char>(0xFE)));
    total += hsum_sad(popcount_epi8(intra));
    // Pairs across byte boundaries: last bit of byte j vs first bit of j+1.
    const auto msb = static_cast<std::uint32_t>(_mm256_movemask_epi8(b));
    const auto lsb = static_cast<std::uint32_t>(
        _mm256_movemask_epi8(_mm256_slli_epi16(b, 7)));
    total += std::popcount((lsb ^ (msb >> 1)) & 0x7FFFFFFFu);
    if (have_prev) total += prev ^ (msb & 1u);
    prev = (lsb >> 31) & 1u;
    have_prev = true;
  }
  // Remaining bits, continuing from the last vector-processed bit.
  const auto bit = [data](std::size_t k) -> unsigned {
    return (data[k >> 3] >> (7 - (k & 7))) & 1u;
  };
  std::size_t pos = i * 8;
  if (!have_prev && pos < bit_count) {
    prev = bit(pos);
    ++pos;
  }
  for (; pos < bit_count; ++pos) {
    const unsigned cur = bit(pos);
    total += prev != cur;
    prev = cur;
  }
  return total;
}

struct Pm1Lut {
  alignas(32) double rows[16][4];
  Pm1Lut() noexcept {
    for (int v = 0; v < 16; ++v) {
      for (int j = 0; j < 4; ++j) {
        rows[v][j] = ((v >> (3 - j)) & 1) ? 1.0 : -1.0;
      }
    }
  }
};

void bits_to_pm1_avx2(const std::uint8_t* data, std::size_t bit_count,
                      double* out) noexcept {
  static const Pm1Lut lut;
  const std::size_t full_bytes = bit_count / 8;
  for (std::size_t i = 0; i < full_bytes; ++i) {
    const std::uint8_t b = data[i];
    _mm256_storeu_pd(out, _mm256_load_pd(lut.rows[b >> 4]));
    _mm256_storeu_pd(out + 4, _mm256_load_pd(lut.rows[b & 0x0F]));
    out += 8;
  }
  for (std::size_t k = full_bytes * 8; k < bit_count; ++k) {
    *out++ = ((data[k >> 3] >> (7 - (k & 7))) & 1u) ? 1.0 : -1.0;
  }
}

std::size_t find_equal_u16_avx2(const std::uint16_t* values, std::size_t count,
                                std::uint16_t key) noexcept {
  const __m256i needle = _mm256_set1_epi16(static_cast<short>(key));
  std::size_t i = 0;
  for (; i + 16 <= count; i += 16) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(values + i));
    const auto mask = static_cast<std::uint32_t>(
        _mm256_movemask_epi8(_mm256_cmpeq_epi16(v, needle)));
    if (mask != 0) {
      return i + (static_cast<std::size_t>(std::countr_zero(mask)) >> 1);
    }
  }
  for (; i < count; ++i) {
    if (values[i] == key) return i;
  }
  return count;
}

void xor_bytes_avx2(const std::uint8_t* a, const std::uint8_t* b,
                    std::uint8_t* out, std::size_t count) noexcept {
  std::size_t i = 0;
  for (; i + 32 <= count; i += 32) {
    const __m256i va =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + i),
                        _mm256_xor_si256(va, vb));
  }
  for (; i < count; ++i) out[i] = a[i] ^ b[i];
}

constexpr KernelTable kAvx2Table{
    Isa::Avx2,          &ones_count_avx2,     &transition_count_avx2,
    &bits_to_pm1_avx2,  &find_equal_u16_avx2, &xor_bytes_avx2,
};

}  // namespace

const KernelTable* avx2_table() noexcept {
#if defined(__GNUC__) || defined(__clang__)
  return __builtin_cpu_supports("avx2") ? &kAvx2Table : nullptr;
#else
  return nullptr;
#endif
}

}  // namespace mmohocc::kernels::detail

#else  // built without AVX2 support

namespace mmohocc::kernels::detail {
const KernelTable* avx2_table() noexcept { return nullptr; }
}  // namespace mmohocc::kernels::detail

#endif
