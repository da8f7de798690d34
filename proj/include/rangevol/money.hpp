#pragma once

// Cent-resolution fixed point. Ledger arithmetic stays exact; floating point
// never touches a cash flow.

#include <compare>
#include <cstdint>
#include <string>

namespace rangevol {

class Money {
 public:
  constexpr Money() = default;
  static constexpr Money from_cents(std::int64_t c) { return Money(c); }

  // Strict decimal with at most two fraction digits ("1.16", "-0.60", "130").
  static Money parse(const std::string& text);

  constexpr std::int64_t cents() const { return cents_; }
  double value() const { return static_cast<double>(cents_) / 100.0; }
  std::string str() const;  // always two decimals

  friend constexpr Money operator+(Money a, Money b) {
    return Money(a.cents_ + b.cents_);
  }
  friend constexpr Money operator-(Money a, Money b) {
    return Money(a.cents_ - b.cents_);
  }
  constexpr Money operator-() const { return Money(-cents_); }
  Money& operator+=(Money o) {
    cents_ += o.cents_;
    return *this;
  }
  auto operator<=>(const Money&) const = default;

 private:
  explicit constexpr Money(std::int64_t c) : cents_(c) {}
  std::int64_t cents_ = 0;
};

}  // namespace rangevol
