#include "mmohocc/hopping.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

#include "mmohocc/keyschedule.hpp"

namespace mmohocc {

HoppingPattern pattern_for_hpsn(std::uint32_t hpsn, std::uint32_t orbit_count) {
  if (hpsn > 255) throw std::invalid_argument("hpsn must be in 0..255");
  if (orbit_count < 2) throw std::invalid_argument("orbit_count must be >= 2");

  HoppingPattern pattern;
  pattern.order.resize(orbit_count);
  std::iota(pattern.order.begin(), pattern.order.end(), 1u);
  // Fisher-Yates driven by mix64(hpsn * 2^32 + draw_index).
  const std::uint64_t base = static_cast<std::uint64_t>(hpsn) << 32;
  for (std::uint32_t i = orbit_count - 1; i >= 1; --i) {
    const std::uint64_t draw = mix64(base + (orbit_count - 1 - i));
    const std::uint32_t j = static_cast<std::uint32_t>(draw % (i + 1));
    std::swap(pattern.order[i], pattern.order[j]);
  }
  return pattern;
}

std::vector<HoppingPattern> full_table(std::uint32_t orbit_count) {
  std::vector<HoppingPattern> table;
  table.reserve(256);
  for (std::uint32_t h = 0; h < 256; ++h) {
    table.push_back(pattern_for_hpsn(h, orbit_count));
  }
  return table;
}

HopScheduler::HopScheduler(HoppingPattern pattern)
    : pattern_(std::move(pattern)) {}

std::uint32_t HopScheduler::next() noexcept {
  const std::uint32_t orbit = pattern_.order[position_];
  position_ = (position_ + 1) % static_cast<std::uint32_t>(pattern_.order.size());
  return orbit;
}

}  // namespace mmohocc
