#include "mmohocc/generator.hpp"

#include <cmath>
#include <stdexcept>

#include "mmohocc/kernels.hpp"

namespace mmohocc {

ExtractedPair extract_pair(double x) {
  if (!(x > 0.0 && x < 1.0)) {
    throw std::domain_error("extract_pair requires x in (0,1)");
  }
  // x * 2^52 is an exact power-of-two scaling for x in (0,1); the truncating
  // cast implements floor for positive values.
  const std::uint64_t t = static_cast<std::uint64_t>(x * 4503599627370496.0);
  const std::uint32_t w = static_cast<std::uint32_t>(t);
  const std::uint8_t a = static_cast<std::uint8_t>(w >> 24);
  const std::uint8_t b = static_cast<std::uint8_t>(w >> 16);
  const std::uint8_t c = static_cast<std::uint8_t>(w >> 8);
  const std::uint8_t d = static_cast<std::uint8_t>(w);
  return ExtractedPair{static_cast<std::uint8_t>(a ^ c),
                       static_cast<std::uint8_t>(b ^ d)};
}

KeystreamGenerator::KeystreamGenerator(const MasterKey& key,
                                       std::uint32_t map_count,
                                       std::uint32_t orbit_count)
    : map_count_(map_count),
      orbit_count_(orbit_count),
      subkeys_(expand_key(key, map_count, orbit_count)) {
  orbits_.reserve(map_count_ * orbit_count_);
  schedulers_.reserve(map_count_);
  for (const Subkey& sk : subkeys_) {
    const ReseedSource source{sk.map_index, sk.entropy};
    for (std::uint32_t k = 1; k <= orbit_count_; ++k) {
      OrbitState orbit{sk.seeds[k - 1], k, 0};
      orbit = burn_in(orbit, sk.params, source, sk.offsets[k - 1]);
      orbits_.push_back(orbit);
    }
    schedulers_.emplace_back(pattern_for_hpsn(sk.hpsn, orbit_count_));
  }
}

std::uint8_t KeystreamGenerator::produce_byte() {
  if (byte_buffer_) {
    const std::uint8_t out = *byte_buffer_;
    byte_buffer_.reset();
    return out;
  }
  if (visit_steps_left_ == 0) {
    visit_orbit_ = schedulers_[current_map_].next();
    visit_steps_left_ = subkeys_[current_map_].dwell;
  }
  const Subkey& sk = subkeys_[current_map_];
  OrbitState& orbit = orbits_[current_map_ * orbit_count_ + (visit_orbit_ - 1)];
  orbit = iterate(orbit, sk.params, ReseedSource{sk.map_index, sk.entropy});
  const ExtractedPair pair = extract_pair(orbit.x);
  if (--visit_steps_left_ == 0) {
    current_map_ = (current_map_ + 1) % map_count_;
  }
  byte_buffer_ = pair.v;
  return pair.u;
}

void KeystreamGenerator::generate(std::span<std::uint8_t> out) {
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = produce_byte();
}

std::vector<std::uint8_t> KeystreamGenerator::next_bytes(std::size_t n) {
  std::vector<std::uint8_t> out(n);
  generate(out);
  return out;
}

void KeystreamGenerator::xor_cipher(std::span<const std::uint8_t> in,
                                    std::span<std::uint8_t> out) {
  if (in.size() != out.size()) {
    throw std::invalid_argument("xor_cipher buffers must have equal size");
  }
  constexpr std::size_t kChunk = 1 << 16;
  std::vector<std::uint8_t> ks(std::min(in.size(), kChunk));
  std::size_t done = 0;
  while (done < in.size()) {
    const std::size_t len = std::min(kChunk, in.size() - done);
    generate(std::span<std::uint8_t>(ks.data(), len));
    kernels::xor_bytes(in.data() + done, ks.data(), out.data() + done, len);
    done += len;
  }
}

}  // namespace mmohocc
