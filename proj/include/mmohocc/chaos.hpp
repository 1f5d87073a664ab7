// Chaotic map families and orbit iteration. The polynomial maps use only
// IEEE-754 multiplies and subtracts in a fixed operand order, so orbits are
// reproducible bit-for-bit across platforms.
#pragma once

#include <cstdint>

#include "mmohocc/keyschedule.hpp"

namespace mmohocc {

/// Current iterate of one orbit. After every public operation x lies
/// strictly inside (0,1) and is finite.
struct OrbitState {
  double x = 0.5;
  std::uint32_t orbit_index = 1;  // 1-based, matching hopping patterns
  std::uint64_t reseed_count = 0;
};

/// Identifies the map that owns an orbit, for degenerate-orbit reseeding.
struct ReseedSource {
  std::uint32_t map_index = 0;
  std::uint64_t entropy = 0;
};

/// Raw polynomial step without sanitization. Normative evaluation order:
///   logistic: t1 = r*x;  t2 = 1-x;    x' = t1*t2
///   cubic:    t1 = x*x;  t2 = 1-t1;  t3 = c*x;  x' = t3*t2
/// each product/difference rounded to nearest-even before the next step.
double map_step(double x, const MapParams& params) noexcept;

/// Replaces a degenerate orbit value with a fresh point in (0,1) derived
/// from (entropy, map_index, orbit_index, reseed_count); increments
/// reseed_count.
OrbitState reseed(OrbitState state, std::uint32_t map_index,
                  std::uint64_t entropy) noexcept;

/// One sanitized iteration: applies map_step, then repairs the result if it
/// left (0,1), is not finite, or locked onto a period-1 fixed point.
OrbitState iterate(OrbitState state, const MapParams& params,
                   const ReseedSource& source) noexcept;

/// n sanitized iterations (discards the orbit's transient).
OrbitState burn_in(OrbitState state, const MapParams& params,
                   const ReseedSource& source, std::uint64_t n) noexcept;

}  // namespace mmohocc
