#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace mmohocc {

/// A packed, length-counted bit sequence under test. Bits are MSB-first
/// within each byte; trailing pad bits in the last byte are ignored.
class BitSequence {
 public:
  BitSequence(std::vector<std::uint8_t> bytes, std::size_t bit_count);

  /// All 8*bytes.size() bits.
  static BitSequence from_bytes(std::vector<std::uint8_t> bytes);

  /// Parses a string of '0'/'1' characters (test fixtures).
  static BitSequence from_ascii(std::string_view bits);

  std::size_t size() const noexcept { return bit_count_; }
  bool bit(std::size_t i) const noexcept {
    return (bytes_[i >> 3] >> (7 - (i & 7))) & 1u;
  }

  const std::uint8_t* data() const noexcept { return bytes_.data(); }
  std::size_t byte_size() const noexcept { return bytes_.size(); }

  std::uint64_t ones() const noexcept;

  /// One byte per bit (0 or 1), for kernels that index bits directly.
  std::vector<std::uint8_t> unpacked() const;

 private:
  std::vector<std::uint8_t> bytes_;
  std::size_t bit_count_ = 0;
};

}  // namespace mmohocc
