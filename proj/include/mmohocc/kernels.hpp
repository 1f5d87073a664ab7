// Bit-buffer kernels on the hot paths of the statistical battery and the
// cipher. Each kernel has a plain scalar reference implementation and an
// AVX2 variant; the active variant is chosen once at runtime and the two are
// equivalence-tested against each other.
//
// Bit buffers are packed MSB-first within each byte: bit i of the sequence
// is (data[i/8] >> (7 - i%8)) & 1.
#pragma once

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace mmohocc::kernels {

enum class Isa { Scalar, Avx2 };

/// Instruction set the dispatcher selected (or was forced to).
Isa active_isa() noexcept;
std::string_view isa_name(Isa isa) noexcept;

/// Forces a specific implementation, primarily for equivalence tests.
/// Returns false (and changes nothing) if `isa` is unsupported on this CPU.
bool force_isa(Isa isa) noexcept;

/// Number of 1-bits among the first bit_count bits.
std::uint64_t ones_count(const std::uint8_t* data, std::size_t bit_count) noexcept;

/// Number of positions i in [0, bit_count-1) with bit_i != bit_{i+1}.
std::uint64_t transition_count(const std::uint8_t* data, std::size_t bit_count) noexcept;

/// Expands bits to doubles: out[i] = bit_i ? 1.0 : -1.0.
void bits_to_pm1(const std::uint8_t* data, std::size_t bit_count, double* out) noexcept;

/// First index with values[i] == key, or count if there is none.
std::size_t find_equal_u16(const std::uint16_t* values, std::size_t count,
                           std::uint16_t key) noexcept;

/// out[i] = a[i] ^ b[i]; out may alias a or b exactly.
void xor_bytes(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
               std::size_t count) noexcept;

/// Scalar reference implementations, kept callable for equivalence tests.
namespace scalar {
std::uint64_t ones_count(const std::uint8_t* data, std::size_t bit_count) noexcept;
std::uint64_t transition_count(const std::uint8_t* data, std::size_t bit_count) noexcept;
void bits_to_pm1(const std::uint8_t* data, std::size_t bit_count, double* out) noexcept;
std::size_t find_equal_u16(const std::uint16_t* values, std::size_t count,
                           std::uint16_t key) noexcept;
void xor_bytes(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* out,
               std::size_t count) noexcept;
}  // namespace scalar

}  // namespace mmohocc::kernels
