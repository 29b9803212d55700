#pragma once

#include <string>
#include <string_view>

namespace forge {

// Hex-encoded SHA-256 of the raw bytes.
std::string sha256_hex(std::string_view data);

}  // namespace forge
