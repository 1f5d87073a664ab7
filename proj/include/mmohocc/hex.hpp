#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace mmohocc {

std::string to_hex(const std::uint8_t* data, std::size_t n);
std::string to_hex(const std::vector<std::uint8_t>& data);

/// Decodes a lowercase/uppercase hex string of even length.
/// Throws std::invalid_argument on odd length or non-hex characters.
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace mmohocc
