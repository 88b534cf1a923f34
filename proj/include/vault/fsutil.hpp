#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace vault {

class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

std::optional<std::string> read_file(const std::filesystem::path& p);
std::string read_file_or_throw(const std::filesystem::path& p);

// Writes to a temp file in the target directory, then renames over the
// destination. Readers see either the old bytes or the new ones, never a
// partial write.
void write_file_atomic(const std::filesystem::path& p, std::string_view bytes);

void ensure_dir(const std::filesystem::path& p);

}  // namespace vault
