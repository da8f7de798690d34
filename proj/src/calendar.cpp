#include "rangevol/calendar.hpp"

#include <cstdio>

#include "rangevol/errors.hpp"

namespace rangevol {

Date Date::from_serial(std::int64_t z) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  const unsigned dd = doy - (153 * mp + 2) / 5 + 1;
  const unsigned mm = mp + (mp < 10 ? 3 : -9);
  return Date{static_cast<int>(yy + (mm <= 2)), static_cast<int>(mm),
              static_cast<int>(dd)};
}

std::string Date::str() const {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", y, m, d);
  return buf;
}

namespace {

bool all_digits(const std::string& s, std::size_t lo, std::size_t hi) {
  for (std::size_t i = lo; i < hi; ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

int days_in_month(int y, int m) {
  static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (m == 2 && (y % 4 == 0 && (y % 100 != 0 || y % 400 == 0))) return 29;
  return days[m - 1];
}

}  // namespace

Date Date::parse(const std::string& text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
      !all_digits(text, 0, 4) || !all_digits(text, 5, 7) ||
      !all_digits(text, 8, 10))
    throw ParseError("bad date '" + text + "' (want YYYY-MM-DD)");
  Date dt{std::stoi(text.substr(0, 4)), std::stoi(text.substr(5, 2)),
          std::stoi(text.substr(8, 2))};
  if (dt.m < 1 || dt.m > 12 || dt.d < 1 || dt.d > days_in_month(dt.y, dt.m))
    throw ParseError("invalid calendar date '" + text + "'");
  return dt;
}

std::string Timestamp::str() const {
  if (!has_time) return date.str();
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%sT%02d:%02d", date.str().c_str(),
                minutes / 60, minutes % 60);
  return buf;
}

Timestamp Timestamp::parse(const std::string& text) {
  if (text.size() == 10) return Timestamp{Date::parse(text), 0, false};
  // YYYY-MM-DDTHH:MM with optional :SS (seconds dropped; quotes are
  // minute-resolution at finest).
  if ((text.size() == 16 || text.size() == 19) && text[10] == 'T' &&
      text[13] == ':' && all_digits(text, 11, 13) && all_digits(text, 14, 16)) {
    if (text.size() == 19 &&
        (text[16] != ':' || !all_digits(text, 17, 19)))
      throw ParseError("bad timestamp '" + text + "'");
    const Date d = Date::parse(text.substr(0, 10));
    const int hh = std::stoi(text.substr(11, 2));
    const int mm = std::stoi(text.substr(14, 2));
    if (hh > 23 || mm > 59)
      throw ParseError("bad time of day in '" + text + "'");
    return Timestamp{d, hh * 60 + mm, true};
  }
  throw ParseError("bad timestamp '" + text +
                   "' (want YYYY-MM-DD[THH:MM[:SS]])");
}

}  // namespace rangevol
