#include "mmohocc/chaos.hpp"

#include <cmath>

namespace mmohocc {

namespace {
constexpr std::uint64_t kSeedModulus = (1ULL << 52) - 1;
constexpr double kSeedScale = 1.0 / 4503599627370496.0;  // 2^-52
}  // namespace

double map_step(double x, const MapParams& params) noexcept {
  if (params.family == MapFamily::Logistic) {
    const double t1 = params.coefficient * x;
    const double t2 = 1.0 - x;
    return t1 * t2;
  }
  const double t1 = x * x;
  const double t2 = 1.0 - t1;
  const double t3 = params.coefficient * x;
  return t3 * t2;
}

OrbitState reseed(OrbitState state, std::uint32_t map_index,
                  std::uint64_t entropy) noexcept {
  const std::uint64_t tag = (static_cast<std::uint64_t>(map_index) << 16) +
                            (static_cast<std::uint64_t>(state.orbit_index) << 8) +
                            state.reseed_count;
  const std::uint64_t h = mix64(entropy ^ tag);
  state.x = static_cast<double>((h % kSeedModulus) + 1) * kSeedScale;
  state.reseed_count += 1;
  return state;
}

OrbitState iterate(OrbitState state, const MapParams& params,
                   const ReseedSource& source) noexcept {
  const double next = map_step(state.x, params);
  // NaN fails both comparisons, so it lands in the repair branch too.
  if (!(next > 0.0 && next < 1.0) || next == state.x) {
    return reseed(state, source.map_index, source.entropy);
  }
  state.x = next;
  return state;
}

OrbitState burn_in(OrbitState state, const MapParams& params,
                   const ReseedSource& source, std::uint64_t n) noexcept {
  for (std::uint64_t i = 0; i < n; ++i) state = iterate(state, params, source);
  return state;
}

}  // namespace mmohocc
