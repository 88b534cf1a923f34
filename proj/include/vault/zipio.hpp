#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace vault {

class ZipError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

struct ZipEntry {
  std::string name;
  std::string data;
};

// Packs entries in the given order, stored (no compression), zeroed DOS
// timestamps: identical input always yields identical bytes.
std::string zip_pack(std::span<const ZipEntry> entries);

// Reads a stored-entry zip written by zip_pack or any compatible writer.
// Rejects compressed entries, duplicate names, CRC mismatches and structural
// damage with ZipError. Entries come back in central directory order.
std::vector<ZipEntry> zip_unpack(std::string_view bytes);

}  // namespace vault
