#include "rangevol/trading.hpp"

#include <algorithm>
#include <cmath>

namespace rangevol {

void validate(const OptionQuote& q) {
  if (q.bid.cents() < 0 || q.bid > q.ask)
    throw ParamError("quote " + q.when.str() + " strike " + q.strike.str() +
                     ": need 0 <= bid <= ask");
}

Signal detect_signal(double model_price, const OptionQuote& q, double band) {
  if (!(band >= 0.0 && band < 1.0))
    throw ParamError("detect_signal: band must be in [0, 1)");
  if (model_price < (1.0 - band) * q.bid.value()) return Signal::kSell;
  if (model_price > (1.0 + band) * q.ask.value()) return Signal::kBuy;
  return Signal::kNone;
}

bool stop_rule(double prev_spot, double spot, double margin) {
  if (!(margin > 0.0)) throw ParamError("stop_rule: margin must be > 0");
  return std::abs(spot / prev_spot - 1.0) > margin;
}

const char* to_string(Action a) {
  switch (a) {
    case Action::kSellOpen: return "sell_open";
    case Action::kBuyOpen: return "buy_open";
    case Action::kBuyClose: return "buy_close";
    case Action::kSellClose: return "sell_close";
    case Action::kExercise: return "exercise";
    case Action::kDeliver: return "deliver";
    case Action::kExpireWorthless: return "expire_worthless";
  }
  return "?";
}

Money ledger_total(const TradeLedger& ledger) {
  Money total;
  for (const auto& e : ledger.events) total += e.cash_flow;
  return total;
}

void ModelPriceTable::add(const Timestamp& when, const Date& expiry,
                          Money strike, double price) {
  prices_[{when, expiry, strike}] = price;
}

std::optional<double> ModelPriceTable::find(const Timestamp& when,
                                            const Date& expiry,
                                            Money strike) const {
  const auto it = prices_.find({when, expiry, strike});
  if (it == prices_.end()) return std::nullopt;
  return it->second;
}

namespace {

struct PendingPosition {
  Date expiry;
  Money strike;
  Timestamp opened;
  Timestamp closed;
  std::vector<TradeEvent> events;
};

// Most recent spot strictly before `d`, if any.
std::optional<double> prior_spot(const std::map<Date, double>& spots, Date d) {
  auto it = spots.lower_bound(d);
  if (it == spots.begin()) return std::nullopt;
  return std::prev(it)->second;
}

}  // namespace

TradeLedger run_strategy(std::span<const OptionQuote> quotes,
                         const ModelPriceTable& model,
                         const std::map<Date, Money>& expiry_spot,
                         const StrategyConfig& cfg,
                         const std::map<Date, double>& daily_spot) {
  if (!(cfg.band >= 0.0 && cfg.band < 1.0))
    throw ParamError("run_strategy: band must be in [0, 1)");

  std::map<std::pair<Date, Money>, std::vector<OptionQuote>> by_instrument;
  for (const auto& q : quotes) {
    validate(q);
    by_instrument[{q.expiry, q.strike}].push_back(q);
  }

  std::vector<PendingPosition> positions;
  for (auto& [key, series] : by_instrument) {
    const auto& [expiry, strike] = key;
    std::stable_sort(series.begin(), series.end(),
                     [](const OptionQuote& a, const OptionQuote& b) {
                       return a.when < b.when;
                     });
    for (std::size_t i = 1; i < series.size(); ++i)
      if (series[i].when == series[i - 1].when)
        throw ParamError("duplicate quote timestamp " + series[i].when.str() +
                         " for strike " + strike.str());

    std::optional<bool> open_short;
    PendingPosition pos;
    for (const auto& q : series) {
      bool closed_this_quote = false;
      const auto price = model.find(q.when, expiry, strike);
      if (!price)
        throw Error("no model price for " + q.when.str() + " expiry " +
                    expiry.str() + " strike " + strike.str());
      if (open_short) {
        const Signal sig = detect_signal(*price, q, cfg.band);
        const bool holds =
            *open_short ? sig == Signal::kSell : sig == Signal::kBuy;
        if (!holds) {
          const Action act =
              *open_short ? Action::kBuyClose : Action::kSellClose;
          const Money cash = *open_short ? -q.ask : q.bid;
          pos.events.push_back({q.when, expiry, strike, act, cash, 0});
          pos.closed = q.when;
          positions.push_back(std::move(pos));
          pos = PendingPosition{};
          open_short.reset();
          closed_this_quote = true;
        }
      }
      if (!open_short && !closed_this_quote) {
        if (cfg.stop_margin) {
          const auto spot_it = daily_spot.find(q.when.date);
          const auto prev = prior_spot(daily_spot, q.when.date);
          if (spot_it != daily_spot.end() && prev &&
              stop_rule(*prev, spot_it->second, *cfg.stop_margin))
            continue;  // gap day: no new entries
        }
        const Signal sig = detect_signal(*price, q, cfg.band);
        if (sig == Signal::kNone) continue;
        const bool is_short = sig == Signal::kSell;
        const Action act = is_short ? Action::kSellOpen : Action::kBuyOpen;
        const Money cash = is_short ? q.bid : -q.ask;
        pos = PendingPosition{expiry, strike, q.when, Timestamp{}, {}};
        pos.events.push_back({q.when, expiry, strike, act, cash, 0});
        open_short = is_short;
      }
    }
    if (open_short) {
      // Held through the last quote: settle at the expiry spot.
      const auto it = expiry_spot.find(expiry);
      if (it == expiry_spot.end())
        throw Error("open position at expiry " + expiry.str() + " strike " +
                    strike.str() + " but no settlement spot supplied");
      const Money spot = it->second;
      const Timestamp settle{expiry, 16 * 60, true};
      Action act = Action::kExpireWorthless;
      Money cash;
      if (spot > strike) {
        act = *open_short ? Action::kDeliver : Action::kExercise;
        cash = *open_short ? strike - spot : spot - strike;
      }
      pos.events.push_back({settle, expiry, strike, act, cash, 0});
      pos.closed = settle;
      positions.push_back(std::move(pos));
    }
  }

  std::sort(positions.begin(), positions.end(),
            [](const PendingPosition& a, const PendingPosition& b) {
              return std::tie(a.opened, a.expiry, a.strike) <
                     std::tie(b.opened, b.expiry, b.strike);
            });

  TradeLedger ledger;
  int id = 0;
  for (auto& pos : positions) {
    ++id;
    Money profit;
    for (auto& e : pos.events) {
      e.position_id = id;
      profit += e.cash_flow;
      ledger.events.push_back(e);
    }
    ledger.positions.push_back(
        {id, pos.expiry, pos.strike, pos.opened, pos.closed, profit});
  }
  std::stable_sort(ledger.events.begin(), ledger.events.end(),
                   [](const TradeEvent& a, const TradeEvent& b) {
                     return std::tie(a.when, a.expiry, a.strike) <
                            std::tie(b.when, b.expiry, b.strike);
                   });
  ledger.total = ledger_total(ledger);
  return ledger;
}

}  // namespace rangevol
