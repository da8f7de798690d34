#pragma once

// Minimal proleptic-Gregorian calendar types. Bars are keyed by Date;
// option quotes carry an optional intraday time (expiry-day rows arrive
// several times a day).

#include <compare>
#include <cstdint>
#include <string>

namespace rangevol {

struct Date {
  int y = 1970;
  int m = 1;
  int d = 1;

  auto operator<=>(const Date&) const = default;

  // Days since 1970-01-01 (Howard Hinnant's civil-days algorithm).
  std::int64_t serial() const {
    const int yy = y - (m <= 2);
    const std::int64_t era = (yy >= 0 ? yy : yy - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(yy - era * 400);
    const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2u) / 5u + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
  }

  static Date from_serial(std::int64_t z);

  // 0 = Monday ... 6 = Sunday.
  int weekday() const {
    const std::int64_t z = serial();
    return static_cast<int>(z >= -3 ? (z + 3) % 7 : (z + 4) % 7 + 6);
  }
  bool is_weekend() const { return weekday() >= 5; }

  Date plus_days(int n) const { return from_serial(serial() + n); }
  Date next_trading_day() const {
    Date nd = plus_days(1);
    while (nd.is_weekend()) nd = nd.plus_days(1);
    return nd;
  }

  std::string str() const;                      // "YYYY-MM-DD"
  static Date parse(const std::string& text);  // throws ParseError
};

// Date plus optional time of day. Date-only stamps order before any timed
// stamp on the same date and serialize back without a time part.
struct Timestamp {
  Date date;
  int minutes = 0;  // since midnight
  bool has_time = false;

  auto operator<=>(const Timestamp&) const = default;

  std::string str() const;  // "YYYY-MM-DD" or "YYYY-MM-DDTHH:MM"
  static Timestamp parse(const std::string& text);
};

}  // namespace rangevol
