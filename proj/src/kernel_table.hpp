// Internal dispatch table shared between kernels.cpp and the ISA-specific
// translation units.
#pragma once

#include "mmohocc/kernels.hpp"

namespace mmohocc::kernels::detail {

struct KernelTable {
  Isa isa;
  std::uint64_t (*ones_count)(const std::uint8_t*, std::size_t) noexcept;
  std::uint64_t (*transition_count)(const std::uint8_t*, std::size_t) noexcept;
  void (*bits_to_pm1)(const std::uint8_t*, std::size_t, double*) noexcept;
  std::size_t (*find_equal_u16)(const std::uint16_t*, std::size_t, std::uint16_t) noexcept;
  void (*xor_bytes)(const std::uint8_t*, const std::uint8_t*, std::uint8_t*, std::size_t) noexcept;
};

/// Returns the AVX2 table when the build carries the AVX2 unit and the CPU
/// supports it; null otherwise.
const KernelTable* avx2_table() noexcept;

}  // namespace mmohocc::kernels::detail
