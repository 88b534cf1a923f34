#include "vault/cidr.hpp"

#include <arpa/inet.h>

namespace vault {

namespace {

// 16-byte form: v6 as-is, v4 as v4-mapped (::ffff:a.b.c.d). Returns the bit
// offset added to prefixes (96 for v4), or -1 on failure.
int to_bytes(std::string_view ip, std::array<unsigned char, 16>& out) {
  std::string s(ip);
  unsigned char v4[4];
  if (inet_pton(AF_INET, s.c_str(), v4) == 1) {
    out.fill(0);
    out[10] = 0xFF;
    out[11] = 0xFF;
    for (int i = 0; i < 4; ++i) out[12 + i] = v4[i];
    return 96;
  }
  if (inet_pton(AF_INET6, s.c_str(), out.data()) == 1) return 0;
  return -1;
}

bool prefix_match(const std::array<unsigned char, 16>& a,
                  const std::array<unsigned char, 16>& b, int bits) {
  int full = bits / 8;
  for (int i = 0; i < full; ++i) {
    if (a[i] != b[i]) return false;
  }
  int rest = bits % 8;
  if (rest == 0) return true;
  unsigned char mask = static_cast<unsigned char>(0xFF << (8 - rest));
  return (a[full] & mask) == (b[full] & mask);
}

}  // namespace

std::optional<Cidr> Cidr::parse(std::string_view text) {
  std::string_view addr = text;
  std::optional<int> given_prefix;

  if (auto slash = text.rfind('/'); slash != std::string_view::npos) {
    addr = text.substr(0, slash);
    std::string_view p = text.substr(slash + 1);
    if (p.empty() || p.size() > 3) return std::nullopt;
    int value = 0;
    for (char c : p) {
      if (c < '0' || c > '9') return std::nullopt;
      value = value * 10 + (c - '0');
    }
    given_prefix = value;
  }

  Cidr out;
  int shift = to_bytes(addr, out.addr_);
  if (shift < 0) return std::nullopt;
  int max_bits = (shift == 96) ? 32 : 128;
  int prefix = given_prefix.value_or(max_bits);  // bare address = host range
  if (prefix < 0 || prefix > max_bits) return std::nullopt;
  out.prefix_ = prefix + shift;
  out.text_ = std::string(text);
  return out;
}

bool Cidr::contains(std::string_view ip) const {
  std::array<unsigned char, 16> bytes;
  if (to_bytes(ip, bytes) < 0) return false;
  return prefix_match(bytes, addr_, prefix_);
}

}  // namespace vault
