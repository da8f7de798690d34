#include "rangevol/backtest.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "rangevol/pricing.hpp"

namespace rangevol {

double trading_tau(const Timestamp& when, const Date& expiry,
                   double annualization) {
  if (expiry < when.date) return 0.0;
  double days = 0.0;
  for (Date d = when.date; d < expiry;) {
    d = d.next_trading_day();
    if (d <= expiry) days += 1.0;
  }
  if (when.date == expiry && when.has_time) {
    constexpr int kOpen = 9 * 60 + 30, kClose = 16 * 60;
    const int left = std::clamp(kClose - when.minutes, 0, kClose - kOpen);
    days += static_cast<double>(left) / (kClose - kOpen);
  }
  return days / annualization;
}

TradeLedger run_backtest(std::span<const OhlcBar> bars,
                         std::span<const OptionQuote> quotes,
                         const RateSeries* rates, const BacktestConfig& cfg) {
  if (!rates && !cfg.constant_rate)
    throw ParamError("run_backtest: need a rate series or a constant rate");

  const auto rolling = rolling_estimate(bars, cfg.window, cfg.annualization);
  std::map<Date, double> vol_by_date;
  for (const auto& [date, est] : rolling)
    vol_by_date[date] = cfg.use_total_vol
                            ? est.sigma_annual
                            : std::sqrt(cfg.annualization * est.v_intraday);

  std::map<Date, double> close_by_date;
  for (const auto& b : bars) close_by_date[b.date] = b.close;

  // Latest map entry strictly before d.
  const auto prior = [](const std::map<Date, double>& m,
                        Date d) -> std::optional<double> {
    auto it = m.lower_bound(d);
    if (it == m.begin()) return std::nullopt;
    return std::prev(it)->second;
  };
  // Latest map entry at or before d.
  const auto at_or_prior = [](const std::map<Date, double>& m,
                              Date d) -> std::optional<double> {
    auto it = m.upper_bound(d);
    if (it == m.begin()) return std::nullopt;
    return std::prev(it)->second;
  };

  ModelPriceTable model;
  std::vector<OptionQuote> priced;
  priced.reserve(quotes.size());
  for (const auto& q : quotes) {
    const auto vol = prior(vol_by_date, q.when.date);
    const auto spot = at_or_prior(close_by_date, q.when.date);
    if (!vol || !spot) continue;  // before the estimation warmup
    const double rate = cfg.constant_rate ? *cfg.constant_rate
                                          : rates->for_date(q.when.date);
    PricingInputs in{*spot, q.strike.value(), rate, *vol,
                     trading_tau(q.when, q.expiry, cfg.annualization)};
    model.add(q.when, q.expiry, q.strike, bs_call(in));
    priced.push_back(q);
  }

  std::map<Date, Money> expiry_spot;
  for (const auto& q : priced) {
    const auto it = close_by_date.find(q.expiry);
    if (it != close_by_date.end())
      expiry_spot[q.expiry] =
          Money::from_cents(std::llround(it->second * 100.0));
  }

  StrategyConfig strat{cfg.band, cfg.stop_margin};
  return run_strategy(priced, model, expiry_spot, strat, close_by_date);
}

}  // namespace rangevol
