#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace iris {

/// FIPS 180-4 SHA-256 (the commitment's key digest). Unit tests pin the
/// standard test vectors.
std::array<uint8_t, 32> sha256(const uint8_t* data, size_t len);
std::array<uint8_t, 32> sha256(const std::vector<uint8_t>& data);

}  // namespace iris
