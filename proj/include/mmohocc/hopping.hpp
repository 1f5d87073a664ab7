// Hopping patterns: the 256-entry lookup table of orbit-visit permutations
// and the per-map scheduler that walks one pattern cyclically.
#pragma once

#include <cstdint>
#include <vector>

namespace mmohocc {

/// A permutation of the orbit indices 1..K giving the visit order.
struct HoppingPattern {
  std::vector<std::uint32_t> order;
};

/// Pattern row for one hopping-pattern serial number. Derived by a
/// Fisher-Yates shuffle of [1..K] driven by mix64, so every implementation
/// regenerates an identical table with no stored data.
/// Throws std::invalid_argument for hpsn > 255 or orbit_count < 2.
HoppingPattern pattern_for_hpsn(std::uint32_t hpsn, std::uint32_t orbit_count);

/// All 256 rows: row h == pattern_for_hpsn(h, orbit_count).
std::vector<HoppingPattern> full_table(std::uint32_t orbit_count);

/// Walks a pattern cyclically; owned by a single generator instance.
class HopScheduler {
 public:
  HopScheduler() = default;
  explicit HopScheduler(HoppingPattern pattern);

  /// Returns the orbit to visit and advances (position wraps modulo K).
  std::uint32_t next() noexcept;

  const HoppingPattern& pattern() const noexcept { return pattern_; }
  std::uint32_t position() const noexcept { return position_; }

 private:
  HoppingPattern pattern_;
  std::uint32_t position_ = 0;
};

}  // namespace mmohocc
