#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vault {

// Content-addressed blob directory: one file per blob, named by the SHA-256
// hex of its bytes. Writes go through a temp file + rename, so a blob file
// either exists completely or not at all.
class BlobStore {
public:
  explicit BlobStore(std::filesystem::path dir);

  static bool valid_key(std::string_view key);

  // Stores bytes, returns the key. Idempotent for identical content.
  std::string put(std::string_view bytes);

  std::optional<std::string> get(const std::string& key) const;
  bool has(const std::string& key) const;
  bool remove(const std::string& key);

  std::vector<std::string> keys() const;  // ascending hex order

  const std::filesystem::path& dir() const { return dir_; }
  std::filesystem::path path_for(const std::string& key) const { return dir_ / key; }

private:
  std::filesystem::path dir_;
};

}  // namespace vault
