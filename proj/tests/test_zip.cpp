#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "vault/zipio.hpp"

using namespace vault;

namespace {

std::string unhex(std::string_view hex) {
  auto nib = [](char c) -> unsigned {
    if (c >= '0' && c <= '9') return static_cast<unsigned>(c - '0');
    return static_cast<unsigned>(c - 'a' + 10);
  };
  std::string out;
  for (std::size_t i = 0; i + 1 < hex.size(); i += 2) {
    out += static_cast<char>((nib(hex[i]) << 4) | nib(hex[i + 1]));
  }
  return out;
}

void le16(std::string& out, uint16_t v) {
  out += static_cast<char>(v & 0xFF);
  out += static_cast<char>(v >> 8);
}

void le32(std::string& out, uint32_t v) {
  le16(out, static_cast<uint16_t>(v & 0xFFFF));
  le16(out, static_cast<uint16_t>(v >> 16));
}

// Stored zip with entries profile.nt and blobs/ab, written by another zip
// implementation with 1980-01-01 timestamps.
const char* kForeignStoredHex =
    "504b030414000000000000002100f48dae5629000000290000000a00000070726f66696c652e6e743c687474703a2f2f"
    "652f733e203c687474703a2f2f652f703e203c687474703a2f2f652f6f3e202e0a504b030414000000000000002100a6"
    "16b7cf090000000900000008000000626c6f62732f61620001ff62696e617279504b0102140314000000000000002100"
    "f48dae5629000000290000000a000000000000000000000080010000000070726f66696c652e6e74504b010214031400"
    "0000000000002100a616b7cf0900000009000000080000000000000000000000800151000000626c6f62732f6162504b"
    "050600000000020002006e000000800000000000";

// Same writer, one deflate-compressed entry x.txt.
const char* kForeignDeflatedHex =
    "504b030414000000080000002100e3513d8d0a0000001700000005000000782e747874cb48cdc9c957c8402701504b01"
    "02140314000000080000002100e3513d8d0a00000017000000050000000000000000000000800100000000782e747874"
    "504b05060000000001000100330000002d0000000000";

}  // namespace

TEST_CASE("round trip preserves names, order and bytes") {
  std::string all_bytes;
  for (int i = 0; i < 256; ++i) all_bytes += static_cast<char>(i);

  std::vector<ZipEntry> in = {
      {"profile.nt", "<http://e/s> <http://e/p> <http://e/o> .\n"},
      {"blobs/00ff", all_bytes},
      {"empty", ""},
  };
  std::string packed = zip_pack(in);
  auto out = zip_unpack(packed);
  REQUIRE(out.size() == in.size());
  for (std::size_t i = 0; i < in.size(); ++i) {
    CHECK(out[i].name == in[i].name);
    CHECK(out[i].data == in[i].data);
  }
}

TEST_CASE("identical input packs to identical bytes, order matters") {
  std::vector<ZipEntry> a = {{"one", "1"}, {"two", "22"}};
  std::vector<ZipEntry> b = {{"two", "22"}, {"one", "1"}};
  CHECK(zip_pack(a) == zip_pack(a));
  CHECK(zip_pack(a) != zip_pack(b));
}

TEST_CASE("single entry archive matches the byte layout exactly") {
  // Assembled field by field from the format definition; the CRC of "hi\n"
  // comes from an independent implementation.
  constexpr uint32_t kCrcHi = 0xed6f7a7a;
  std::string want;
  le32(want, 0x04034b50);
  le16(want, 10);
  le16(want, 0);
  le16(want, 0);
  le16(want, 0);       // time
  le16(want, 0x0021);  // date 1980-01-01
  le32(want, kCrcHi);
  le32(want, 3);
  le32(want, 3);
  le16(want, 5);
  le16(want, 0);
  want += "a.txt";
  want += "hi\n";
  le32(want, 0x02014b50);
  le16(want, 20);
  le16(want, 10);
  le16(want, 0);
  le16(want, 0);
  le16(want, 0);
  le16(want, 0x0021);
  le32(want, kCrcHi);
  le32(want, 3);
  le32(want, 3);
  le16(want, 5);
  le16(want, 0);
  le16(want, 0);
  le16(want, 0);
  le16(want, 0);
  le32(want, 0);
  le32(want, 0);  // local header offset
  want += "a.txt";
  le32(want, 0x06054b50);
  le16(want, 0);
  le16(want, 0);
  le16(want, 1);
  le16(want, 1);
  le32(want, 46 + 5);
  le32(want, 30 + 5 + 3);
  le16(want, 0);

  std::vector<ZipEntry> in = {{"a.txt", "hi\n"}};
  CHECK(zip_pack(in) == want);
}

TEST_CASE("empty archive is just the end record") {
  std::string packed = zip_pack({});
  CHECK(packed.size() == 22);
  CHECK(zip_unpack(packed).empty());
}

TEST_CASE("archives from another stored-zip writer unpack") {
  auto entries = zip_unpack(unhex(kForeignStoredHex));
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].name == "profile.nt");
  CHECK(entries[0].data == "<http://e/s> <http://e/p> <http://e/o> .\n");
  CHECK(entries[1].name == "blobs/ab");
  CHECK(entries[1].data == std::string("\x00\x01\xff", 3) + "binary");
}

TEST_CASE("compressed entries are rejected") {
  CHECK_THROWS_WITH_AS(zip_unpack(unhex(kForeignDeflatedHex)),
                       doctest::Contains("unsupported compression method"), ZipError);

  // central directory says stored but the local header disagrees
  std::vector<ZipEntry> in = {{"a.txt", "hi\n"}};
  std::string packed = zip_pack(in);
  packed[8] = 8;  // local header method field
  CHECK_THROWS_WITH_AS(zip_unpack(packed), doctest::Contains("unsupported compression method"),
                       ZipError);
}

TEST_CASE("corruption is detected") {
  std::vector<ZipEntry> in = {{"a.txt", "hi\n"}};
  std::string good = zip_pack(in);

  SUBCASE("flipped data byte fails the checksum") {
    std::string z = good;
    z[35] ^= 0x01;  // inside "hi\n"
    CHECK_THROWS_WITH_AS(zip_unpack(z), doctest::Contains("CRC mismatch"), ZipError);
  }
  SUBCASE("damaged local header signature") {
    std::string z = good;
    z[0] ^= 0xFF;
    CHECK_THROWS_WITH_AS(zip_unpack(z), doctest::Contains("bad local header"), ZipError);
  }
  SUBCASE("damaged central directory signature") {
    std::string z = good;
    z[38] ^= 0xFF;  // first central entry begins after local header + name + data
    CHECK_THROWS_WITH_AS(zip_unpack(z), doctest::Contains("central directory"), ZipError);
  }
  SUBCASE("entry count mismatch in the end record") {
    std::string z = good;
    z[z.size() - 22 + 8] = 2;
    CHECK_THROWS_WITH_AS(zip_unpack(z), doctest::Contains("inconsistent"), ZipError);
  }
  SUBCASE("truncation anywhere") {
    for (std::size_t keep : {good.size() - 1, good.size() - 21, good.size() / 2,
                             std::size_t{30}, std::size_t{21}, std::size_t{0}}) {
      CHECK_THROWS_AS(zip_unpack(good.substr(0, keep)), ZipError);
    }
  }
  SUBCASE("not a zip at all") {
    CHECK_THROWS_AS(zip_unpack(std::string(100, 'x')), ZipError);
  }
}

TEST_CASE("duplicate entry names are rejected on read") {
  std::vector<ZipEntry> dup = {{"same", "x"}, {"same", "y"}};
  std::string packed = zip_pack(dup);
  CHECK_THROWS_WITH_AS(zip_unpack(packed), doctest::Contains("duplicate entry name"), ZipError);
}

TEST_CASE("unrepresentable entries are rejected on write") {
  std::vector<ZipEntry> unnamed = {{"", "data"}};
  CHECK_THROWS_AS(zip_pack(unnamed), ZipError);
}
