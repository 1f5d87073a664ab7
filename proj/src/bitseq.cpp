#include "mmohocc/bitseq.hpp"

#include <stdexcept>

#include "mmohocc/kernels.hpp"

namespace mmohocc {

BitSequence::BitSequence(std::vector<std::uint8_t> bytes, std::size_t bit_count)
    : bytes_(std::move(bytes)), bit_count_(bit_count) {
  if (bit_count_ == 0) throw std::invalid_argument("bit sequence must be non-empty");
  if (bit_count_ > 8 * bytes_.size()) {
    throw std::invalid_argument("bit count exceeds byte storage");
  }
}

BitSequence BitSequence::from_bytes(std::vector<std::uint8_t> bytes) {
  const std::size_t n = 8 * bytes.size();
  return BitSequence(std::move(bytes), n);
}

BitSequence BitSequence::from_ascii(std::string_view bits) {
  std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
  for (std::size_t i = 0; i < bits.size(); ++i) {
    const char c = bits[i];
    if (c != '0' && c != '1') throw std::invalid_argument("expected '0' or '1'");
    if (c == '1') bytes[i >> 3] |= static_cast<std::uint8_t>(0x80 >> (i & 7));
  }
  return BitSequence(std::move(bytes), bits.size());
}

std::uint64_t BitSequence::ones() const noexcept {
  return kernels::ones_count(bytes_.data(), bit_count_);
}

std::vector<std::uint8_t> BitSequence::unpacked() const {
  std::vector<std::uint8_t> out(bit_count_);
  for (std::size_t i = 0; i < bit_count_; ++i) out[i] = bit(i) ? 1 : 0;
  return out;
}

}  // namespace mmohocc
