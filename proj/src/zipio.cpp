#include "vault/zipio.hpp"

#include <zlib.h>

#include <cstdint>
#include <set>

namespace vault {

namespace {

// Fixed DOS timestamp: 1980-01-01 00:00:00, the epoch of the format.
constexpr uint16_t kDosDate = 0x0021;
constexpr uint16_t kDosTime = 0;

void put_u16(std::string& out, uint16_t v) {
  out += static_cast<char>(v & 0xFF);
  out += static_cast<char>((v >> 8) & 0xFF);
}

void put_u32(std::string& out, uint32_t v) {
  out += static_cast<char>(v & 0xFF);
  out += static_cast<char>((v >> 8) & 0xFF);
  out += static_cast<char>((v >> 16) & 0xFF);
  out += static_cast<char>((v >> 24) & 0xFF);
}

uint32_t crc_of(std::string_view data) {
  return static_cast<uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size())));
}

class Reader {
public:
  explicit Reader(std::string_view bytes) : b_(bytes) {}

  uint16_t u16(std::size_t off) const {
    need(off, 2);
    return static_cast<uint16_t>(byte(off) | (byte(off + 1) << 8));
  }

  uint32_t u32(std::size_t off) const {
    need(off, 4);
    return byte(off) | (byte(off + 1) << 8) | (byte(off + 2) << 16) |
           (static_cast<uint32_t>(byte(off + 3)) << 24);
  }

  std::string_view slice(std::size_t off, std::size_t len) const {
    need(off, len);
    return b_.substr(off, len);
  }

  std::size_t size() const { return b_.size(); }

private:
  uint32_t byte(std::size_t off) const { return static_cast<unsigned char>(b_[off]); }

  void need(std::size_t off, std::size_t len) const {
    if (off > b_.size() || b_.size() - off < len) throw ZipError("truncated zip data");
  }

  std::string_view b_;
};

}  // namespace

std::string zip_pack(std::span<const ZipEntry> entries) {
  std::string out;
  struct CdRecord {
    uint32_t crc;
    uint32_t size;
    uint32_t offset;
    std::string name;
  };
  std::vector<CdRecord> cd;

  for (const ZipEntry& e : entries) {
    if (e.data.size() > 0xFFFFFFF0 || e.name.empty() || e.name.size() > 0xFFFF) {
      throw ZipError("entry not representable: " + e.name);
    }
    uint32_t offset = static_cast<uint32_t>(out.size());
    uint32_t crc = crc_of(e.data);
    uint32_t size = static_cast<uint32_t>(e.data.size());

    put_u32(out, 0x04034b50);
    put_u16(out, 10);        // version needed: stored entries only
    put_u16(out, 0);         // flags
    put_u16(out, 0);         // method: store
    put_u16(out, kDosTime);
    put_u16(out, kDosDate);
    put_u32(out, crc);
    put_u32(out, size);      // compressed
    put_u32(out, size);      // uncompressed
    put_u16(out, static_cast<uint16_t>(e.name.size()));
    put_u16(out, 0);         // extra
    out += e.name;
    out += e.data;

    cd.push_back(CdRecord{crc, size, offset, e.name});
  }

  uint32_t cd_offset = static_cast<uint32_t>(out.size());
  for (const CdRecord& r : cd) {
    put_u32(out, 0x02014b50);
    put_u16(out, 20);        // version made by
    put_u16(out, 10);        // version needed
    put_u16(out, 0);         // flags
    put_u16(out, 0);         // method
    put_u16(out, kDosTime);
    put_u16(out, kDosDate);
    put_u32(out, r.crc);
    put_u32(out, r.size);
    put_u32(out, r.size);
    put_u16(out, static_cast<uint16_t>(r.name.size()));
    put_u16(out, 0);         // extra
    put_u16(out, 0);         // comment
    put_u16(out, 0);         // disk number
    put_u16(out, 0);         // internal attrs
    put_u32(out, 0);         // external attrs
    put_u32(out, r.offset);
    out += r.name;
  }
  uint32_t cd_size = static_cast<uint32_t>(out.size()) - cd_offset;

  put_u32(out, 0x06054b50);
  put_u16(out, 0);  // disk
  put_u16(out, 0);  // cd start disk
  put_u16(out, static_cast<uint16_t>(cd.size()));
  put_u16(out, static_cast<uint16_t>(cd.size()));
  put_u32(out, cd_size);
  put_u32(out, cd_offset);
  put_u16(out, 0);  // comment length
  return out;
}

std::vector<ZipEntry> zip_unpack(std::string_view bytes) {
  Reader r(bytes);
  if (r.size() < 22) throw ZipError("too short to be a zip archive");

  // EOCD: scan back over a possible comment
  std::size_t eocd = std::string_view::npos;
  std::size_t lowest = r.size() >= 22 + 0xFFFF ? r.size() - 22 - 0xFFFF : 0;
  for (std::size_t i = r.size() - 22 + 1; i-- > lowest;) {
    if (r.u32(i) == 0x06054b50) {
      eocd = i;
      break;
    }
  }
  if (eocd == std::string_view::npos) throw ZipError("end-of-directory record not found");

  uint16_t count = r.u16(eocd + 10);
  uint32_t cd_size = r.u32(eocd + 12);
  uint32_t cd_offset = r.u32(eocd + 16);
  if (static_cast<std::size_t>(cd_offset) + cd_size > eocd || r.u16(eocd + 8) != count) {
    throw ZipError("inconsistent end-of-directory record");
  }

  std::vector<ZipEntry> entries;
  std::set<std::string> names;
  std::size_t pos = cd_offset;
  for (uint16_t i = 0; i < count; ++i) {
    if (r.u32(pos) != 0x02014b50) throw ZipError("bad central directory entry");
    uint16_t method = r.u16(pos + 10);
    uint32_t crc = r.u32(pos + 16);
    uint32_t csize = r.u32(pos + 20);
    uint32_t usize = r.u32(pos + 24);
    uint16_t name_len = r.u16(pos + 28);
    uint16_t extra_len = r.u16(pos + 30);
    uint16_t comment_len = r.u16(pos + 32);
    uint32_t local_off = r.u32(pos + 42);
    std::string name(r.slice(pos + 46, name_len));
    pos += 46u + name_len + extra_len + comment_len;

    if (method != 0) throw ZipError("unsupported compression method in entry " + name);
    if (csize != usize) throw ZipError("stored entry size mismatch in " + name);
    if (name.empty()) throw ZipError("empty entry name");
    if (!names.insert(name).second) throw ZipError("duplicate entry name " + name);

    if (r.u32(local_off) != 0x04034b50) throw ZipError("bad local header for " + name);
    if (r.u16(local_off + 8) != 0) throw ZipError("unsupported compression method in entry " + name);
    uint16_t lname_len = r.u16(local_off + 26);
    uint16_t lextra_len = r.u16(local_off + 28);
    std::size_t data_off = local_off + 30u + lname_len + lextra_len;
    std::string data(r.slice(data_off, csize));

    if (crc_of(data) != crc) throw ZipError("CRC mismatch in entry " + name);
    entries.push_back(ZipEntry{std::move(name), std::move(data)});
  }
  return entries;
}

}  // namespace vault
