#include "mmohocc/kernels.hpp"

#include <atomic>
#include <bit>

#include "kernel_table.hpp"

namespace mmohocc::kernels {

namespace scalar {

std::uint64_t ones_count(const std::uint8_t* data, std::size_t bit_count) noexcept {
  std::uint64_t total = 0;
  const std::size_t full_bytes = bit_count / 8;
  for (std::size_t i = 0; i < full_bytes; ++i) {
    total += static_cast<std::uint64_t>(std::popcount(data[i]));
  }
  const unsigned tail = bit_count % 8;
  if (tail != 0) {
    const auto masked = static_cast<std::uint8_t>(data[full_bytes] & (0xFF << (8 - tail)));
    total += static_cast<std::uint64_t>(std::popcount(masked));
  }
  return total;
}

std::uint64_t transition_count(const std::uint8_t* data, std::size_t bit_count) noexcept {
  if (bit_count < 2) return 0;
  const auto bit = [data](std::size_t i) -> unsigned {
    return (data[i >> 3] >> (7 - (i & 7))) & 1u;
  };
  std::uint64_t total = 0;
  unsigned prev = bit(0);
  for (std::size_t i = 1; i < bit_count; ++i) {
    const unsigned cur = bit(i);
    total += prev != cur;
    prev = cur;
  }
  return total;
}

void bits_to_pm1(const std::uint8_t* data, std::size_t bit_count, double* out) noexcept {
  for (std::size_t i = 0; i < bit_count; ++i) {
    out[i] = ((data[i >> 3] >> (7 - (i & 7))) & 1u) ? 1.0 : -1.0;
  }
}

std::size_t find_equal_u16(const std::uint16_t* values, std::size_t count,
                           std::uint16_t key) noexcept {
  for (std::size_t i = 0; i < count; ++i) {
    if (values[i] == key) return i;
  }
  return count;
}

void xor_bytes(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
               std::size_t count) noexcept {
  for (std::size_t i = 0; i < count; ++i) out[i] = a[i] ^ b[i];
}

}  // namespace scalar

namespace detail {
namespace {

constexpr KernelTable kScalarTable{
    Isa::Scalar,          &scalar::ones_count,     &scalar::transition_count,
    &scalar::bits_to_pm1, &scalar::find_equal_u16, &scalar::xor_bytes,
};

const KernelTable* detect() noexcept {
  if (const KernelTable* t = avx2_table()) return t;
  return &kScalarTable;
}

std::atomic<const KernelTable*>& active_table() noexcept {
  static std::atomic<const KernelTable*> table{detect()};
  return table;
}

}  // namespace
}  // namespace detail

Isa active_isa() noexcept { return detail::active_table().load()->isa; }

std::string_view isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::Avx2:
      return "avx2";
    case Isa::Scalar:
      break;
  }
  return "scalar";
}

bool force_isa(Isa isa) noexcept {
  const detail::KernelTable* target = nullptr;
  if (isa == Isa::Scalar) {
    target = &detail::kScalarTable;
  } else if (isa == Isa::Avx2) {
    target = detail::avx2_table();
  }
  if (target == nullptr) return false;
  detail::active_table().store(target);
  return true;
}

std::uint64_t ones_count(const std::uint8_t* data, std::size_t bit_count) noexcept {
  return detail::active_table().load()->ones_count(data, bit_count);
}

std::uint64_t transition_count(const std::uint8_t* data, std::size_t bit_count) noexcept {
  return detail::active_table().load()->transition_count(data, bit_count);
}

void bits_to_pm1(const std::uint8_t* data, std::size_t bit_count, double* out) noexcept {
  detail::active_table().load()->bits_to_pm1(data, bit_count, out);
}

std::size_t find_equal_u16(const std::uint16_t* values, std::size_t count,
                           std::uint16_t key) noexcept {
  return detail::active_table().load()->find_equal_u16(values, count, key);
}

void xor_bytes(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
               std::size_t count) noexcept {
  detail::active_table().load()->xor_bytes(a, b, out, count);
}

}  // namespace mmohocc::kernels
