#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace vault {

// Proleptic Gregorian calendar date, lexical form YYYY-MM-DD.
struct Date {
  std::chrono::year_month_day ymd;

  // Strict parse: exactly ten characters, digits and dashes in place, and the
  // triple must name a real day (no 2023-02-29).
  static std::optional<Date> parse(std::string_view lexical);
  static Date from_days(std::chrono::sys_days d);

  std::chrono::sys_days to_days() const { return std::chrono::sys_days(ymd); }
  std::string str() const;

  friend bool operator==(const Date& a, const Date& b) { return a.ymd == b.ymd; }
  friend std::strong_ordering operator<=>(const Date& a, const Date& b) {
    return a.to_days() <=> b.to_days();
  }
};

}  // namespace vault
