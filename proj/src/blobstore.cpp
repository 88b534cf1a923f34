#include "vault/blobstore.hpp"

#include <algorithm>

#include "vault/fsutil.hpp"
#include "vault/sha256.hpp"
#include "vault/views.hpp"

namespace vault {

BlobStore::BlobStore(std::filesystem::path dir) : dir_(std::move(dir)) {
  ensure_dir(dir_);
}

bool BlobStore::valid_key(std::string_view key) { return is_hex_hash(key); }

std::string BlobStore::put(std::string_view bytes) {
  std::string key = sha256_hex(bytes);
  if (!has(key)) write_file_atomic(path_for(key), bytes);
  return key;
}

std::optional<std::string> BlobStore::get(const std::string& key) const {
  if (!valid_key(key)) return std::nullopt;
  return read_file(path_for(key));
}

bool BlobStore::has(const std::string& key) const {
  return valid_key(key) && std::filesystem::exists(path_for(key));
}

bool BlobStore::remove(const std::string& key) {
  if (!valid_key(key)) return false;
  std::error_code ec;
  return std::filesystem::remove(path_for(key), ec) && !ec;
}

std::vector<std::string> BlobStore::keys() const {
  std::vector<std::string> out;
  for (const auto& entry : std::filesystem::directory_iterator(dir_)) {
    std::string name = entry.path().filename().string();
    if (valid_key(name)) out.push_back(std::move(name));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace vault
