#pragma once

// End-to-end backtest wiring: bars -> rolling volatility -> model call
// prices -> band strategy. Information timing is causal: a quote on day d is
// priced with the rolling estimate whose window ends on the latest bar
// strictly before d, and with the rate quoted on the most recent prior date.

#include <optional>
#include <span>

#include "rangevol/cli_io.hpp"
#include "rangevol/trading.hpp"

namespace rangevol {

struct BacktestConfig {
  int window = 63;
  double band = 0.10;
  double annualization = 252.0;
  std::optional<double> stop_margin;
  // Default prices with the annualized intraday (trading-day) volatility
  // sqrt(ann * V_i); the band compensates for the missing after-hours
  // variance. Set true to price with sqrt(ann * V_Z) instead.
  bool use_total_vol = false;
  // Overrides the rate series when set.
  std::optional<double> constant_rate;
};

// Quotes dated before the first available estimate (or first bar) are
// dropped; everything else prices and trades. Settlement spots come from the
// bar closes on expiry dates.
TradeLedger run_backtest(std::span<const OhlcBar> bars,
                         std::span<const OptionQuote> quotes,
                         const RateSeries* rates, const BacktestConfig& cfg);

// Trading-day fraction of year between d (exclusive) and expiry (inclusive),
// counting weekdays / annualization; an intraday stamp on the expiry date
// contributes the remaining fraction of the 09:30-16:00 session.
double trading_tau(const Timestamp& when, const Date& expiry,
                   double annualization);

}  // namespace rangevol
