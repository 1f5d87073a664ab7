// Key schedule: expands a 128/256/512-bit master key into per-map subkeys
// and defines mix64, the mixing finalizer every derivation in this project
// is built on.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mmohocc {

/// 64-bit mixing finalizer (xor-shift / multiply, two rounds). Bijective on
/// uint64 and bit-exact on every platform; mix64(0) == 0.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z ^= z >> 33;
  z *= 0xFF51AFD7ED558CCDULL;
  z ^= z >> 33;
  z *= 0xC4CEB9FE1A85EC53ULL;
  z ^= z >> 33;
  return z;
}

enum class MapFamily : std::uint8_t { Logistic = 0, Cubic = 1 };

/// Control parameters of one chaotic map. Logistic coefficients live in
/// [3.99, 4.0), cubic coefficients in [2.55, 2.598]; both keep the unit
/// interval invariant apart from rounding-edge escapes, which the orbit
/// sanitizer repairs.
struct MapParams {
  MapFamily family = MapFamily::Logistic;
  double coefficient = 3.99;
};

bool params_in_range(const MapParams& params) noexcept;

/// Master key of exactly 16, 32 or 64 bytes.
class MasterKey {
 public:
  explicit MasterKey(std::vector<std::uint8_t> bytes);
  static MasterKey from_hex(std::string_view hex);

  const std::vector<std::uint8_t>& bytes() const noexcept { return bytes_; }
  std::string to_hex() const;

 private:
  std::vector<std::uint8_t> bytes_;
};

/// Per-map control record derived from the master key.
struct Subkey {
  std::uint32_t map_index = 0;
  MapParams params;
  std::vector<double> seeds;           // orbit_count seeds, each in (0,1)
  std::vector<std::uint32_t> offsets;  // orbit_count burn-in counts in [64,255]
  std::uint8_t hpsn = 0;               // hopping-pattern serial number
  std::uint8_t dwell = 1;              // extractions per orbit visit, 1..4
  std::uint64_t entropy = 0;           // feeds degenerate-orbit reseeding
};

inline constexpr std::uint32_t kDefaultMapCount = 4;
inline constexpr std::uint32_t kDefaultOrbitCount = 11;

/// Deterministically expands `key` into `map_count` subkeys with
/// `orbit_count` orbits each. Throws std::invalid_argument on a bad key
/// length, map_count < 1 or orbit_count < 2.
std::vector<Subkey> expand_key(const MasterKey& key, std::uint32_t map_count,
                               std::uint32_t orbit_count);

}  // namespace mmohocc
