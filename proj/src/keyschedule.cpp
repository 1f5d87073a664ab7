#include "mmohocc/keyschedule.hpp"

#include <stdexcept>

#include "mmohocc/hex.hpp"

namespace mmohocc {

namespace {

constexpr std::uint64_t kMapSalt = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kSeedModulus = (1ULL << 52) - 1;
constexpr double kSeedScale = 1.0 / 4503599627370496.0;  // 2^-52

bool valid_key_length(std::size_t n) { return n == 16 || n == 32 || n == 64; }

}  // namespace

bool params_in_range(const MapParams& params) noexcept {
  if (params.family == MapFamily::Logistic) {
    return params.coefficient >= 3.99 && params.coefficient < 4.0;
  }
  return params.coefficient >= 2.55 && params.coefficient <= 2.598;
}

MasterKey::MasterKey(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {
  if (!valid_key_length(bytes_.size())) {
    throw std::invalid_argument("master key must be 16, 32 or 64 bytes");
  }
}

MasterKey MasterKey::from_hex(std::string_view hex) {
  return MasterKey(mmohocc::from_hex(hex));
}

std::string MasterKey::to_hex() const { return mmohocc::to_hex(bytes_); }

std::vector<Subkey> expand_key(const MasterKey& key, std::uint32_t map_count,
                               std::uint32_t orbit_count) {
  if (map_count < 1) throw std::invalid_argument("map_count must be >= 1");
  if (orbit_count < 2) throw std::invalid_argument("orbit_count must be >= 2");

  const auto& bytes = key.bytes();
  const std::size_t word_count = bytes.size() / 8;
  std::vector<std::uint64_t> words(word_count);
  for (std::size_t i = 0; i < word_count; ++i) {
    std::uint64_t w = 0;
    for (int b = 0; b < 8; ++b) w = (w << 8) | bytes[8 * i + b];
    words[i] = w;
  }

  std::vector<Subkey> subkeys;
  subkeys.reserve(map_count);
  for (std::uint32_t j = 0; j < map_count; ++j) {
    std::uint64_t state = 0;
    const std::uint64_t salt = static_cast<std::uint64_t>(j) * kMapSalt;
    for (const std::uint64_t w : words) state = mix64(state ^ w ^ salt);
    const auto derive = [state](std::uint64_t tag) { return mix64(state ^ tag); };

    Subkey sk;
    sk.map_index = j;
    sk.params.family =
        (derive(0) % 2 == 0) ? MapFamily::Logistic : MapFamily::Cubic;
    // The quotient by 1024 is exact (power-of-two divisor); the remaining
    // multiply and add each round once, identically on every platform.
    const double frac = static_cast<double>(derive(1) % 1024) / 1024.0;
    sk.params.coefficient = (sk.params.family == MapFamily::Logistic)
                                ? 3.99 + frac * 0.0099
                                : 2.55 + frac * 0.048;
    sk.seeds.resize(orbit_count);
    sk.offsets.resize(orbit_count);
    for (std::uint32_t k = 1; k <= orbit_count; ++k) {
      sk.seeds[k - 1] =
          static_cast<double>((derive(256 + k) % kSeedModulus) + 1) * kSeedScale;
      sk.offsets[k - 1] = 64 + static_cast<std::uint32_t>(derive(512 + k) % 192);
    }
    sk.hpsn = static_cast<std::uint8_t>(derive(2) % 256);
    sk.dwell = static_cast<std::uint8_t>(1 + derive(3) % 4);
    sk.entropy = derive(4);
    subkeys.push_back(std::move(sk));
  }
  return subkeys;
}

}  // namespace mmohocc
