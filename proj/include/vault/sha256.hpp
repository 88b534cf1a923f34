#pragma once

#include <string>
#include <string_view>

namespace vault {

// Lowercase hex SHA-256 digest of the given bytes.
std::string sha256_hex(std::string_view bytes);

}  // namespace vault
