#pragma once

namespace mmohocc {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace mmohocc
