#include "vault/date.hpp"

#include <cctype>
#include <cstdio>

namespace vault {

std::optional<Date> Date::parse(std::string_view lexical) {
  if (lexical.size() != 10) return std::nullopt;
  if (lexical[4] != '-' || lexical[7] != '-') return std::nullopt;
  for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u}) {
    if (!std::isdigit(static_cast<unsigned char>(lexical[i]))) return std::nullopt;
  }
  auto num = [&](std::size_t off, std::size_t len) {
    int v = 0;
    for (std::size_t i = 0; i < len; ++i) v = v * 10 + (lexical[off + i] - '0');
    return v;
  };
  std::chrono::year_month_day ymd{std::chrono::year(num(0, 4)),
                                  std::chrono::month(static_cast<unsigned>(num(5, 2))),
                                  std::chrono::day(static_cast<unsigned>(num(8, 2)))};
  if (!ymd.ok()) return std::nullopt;
  return Date{ymd};
}

Date Date::from_days(std::chrono::sys_days d) {
  return Date{std::chrono::year_month_day(d)};
}

std::string Date::str() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
  return buf;
}

}  // namespace vault
