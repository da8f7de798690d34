#include "rangevol/money.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

#include "rangevol/errors.hpp"

namespace rangevol {

Money Money::parse(const std::string& text) {
  const char* s = text.c_str();
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (s[i] == '+' || s[i] == '-')) neg = s[i++] == '-';
  std::int64_t whole = 0;
  std::size_t digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    whole = whole * 10 + (s[i] - '0');
    ++i;
    ++digits;
  }
  std::int64_t frac = 0;
  std::size_t frac_digits = 0;
  if (i < text.size() && s[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      if (++frac_digits > 2)
        throw ParseError("money '" + text + "': more than two decimals");
      frac = frac * 10 + (s[i] - '0');
      ++i;
    }
    if (frac_digits == 0)
      throw ParseError("money '" + text + "': trailing decimal point");
  }
  if (i != text.size() || digits == 0)
    throw ParseError("bad money value '" + text + "'");
  if (frac_digits == 1) frac *= 10;
  const std::int64_t cents = whole * 100 + frac;
  return Money::from_cents(neg ? -cents : cents);
}

std::string Money::str() const {
  const std::int64_t a = cents_ < 0 ? -cents_ : cents_;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%lld.%02lld", cents_ < 0 ? "-" : "",
                static_cast<long long>(a / 100),
                static_cast<long long>(a % 100));
  return buf;
}

}  // namespace rangevol
