#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace vault {

// Parsed CIDR range, IPv4 or IPv6. IPv4 addresses are held as v4-mapped v6
// internally so a v4 range never matches a genuine v6 client and vice versa.
class Cidr {
public:
  static std::optional<Cidr> parse(std::string_view text);

  // ip is a textual peer address. Unparseable input matches nothing.
  bool contains(std::string_view ip) const;

  const std::string& str() const { return text_; }

private:
  Cidr() = default;

  std::array<unsigned char, 16> addr_{};
  int prefix_ = 0;  // bit count within the 16-byte form (v4 prefixes shifted by 96)
  std::string text_;
};

}  // namespace vault
