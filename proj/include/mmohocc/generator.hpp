// Keystream assembly: hops across maps and orbits, squeezes two bytes out of
// every chaotic iterate, and XORs the resulting stream with plaintext.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mmohocc/chaos.hpp"
#include "mmohocc/hopping.hpp"
#include "mmohocc/keyschedule.hpp"

namespace mmohocc {

struct ExtractedPair {
  std::uint8_t u = 0;
  std::uint8_t v = 0;
};

/// Two-byte extraction from an orbit point x in (0,1):
/// take w = low 32 bits of floor(x * 2^52), split big-endian into bytes
/// a b c d, output u = a^c and v = b^d. Throws std::domain_error if x is
/// outside (0,1).
ExtractedPair extract_pair(double x);

/// Sequential keystream state machine. One logical owner at a time; copyable,
/// so a copy can replay the same stream. Independent instances may run fully
/// in parallel.
class KeystreamGenerator {
 public:
  explicit KeystreamGenerator(const MasterKey& key,
                              std::uint32_t map_count = kDefaultMapCount,
                              std::uint32_t orbit_count = kDefaultOrbitCount);

  /// Fills `out` with the next keystream bytes.
  void generate(std::span<std::uint8_t> out);

  std::vector<std::uint8_t> next_bytes(std::size_t n);

  /// out[i] = in[i] ^ keystream[i]. Encryption and decryption are the same
  /// operation; in and out may alias exactly.
  void xor_cipher(std::span<const std::uint8_t> in, std::span<std::uint8_t> out);

  std::uint32_t map_count() const noexcept { return map_count_; }
  std::uint32_t orbit_count() const noexcept { return orbit_count_; }
  const std::vector<Subkey>& subkeys() const noexcept { return subkeys_; }

 private:
  std::uint8_t produce_byte();

  std::uint32_t map_count_ = 0;
  std::uint32_t orbit_count_ = 0;
  std::vector<Subkey> subkeys_;
  std::vector<OrbitState> orbits_;  // map-major, map_count_ * orbit_count_
  std::vector<HopScheduler> schedulers_;
  std::uint32_t current_map_ = 0;
  std::uint32_t visit_orbit_ = 0;       // valid while visit_steps_left_ > 0
  std::uint32_t visit_steps_left_ = 0;  // extractions left in current visit
  std::optional<std::uint8_t> byte_buffer_;  // pending v byte
};

}  // namespace mmohocc
