#pragma once

// Mispricing-band strategy over option quote series.
//
// A model price outside (1-band)*bid .. (1+band)*ask opens a position
// (short at bid when the model is below, long at ask when above). The
// position closes at the first later quote where its band inequality no
// longer holds (short covers at ask, long sells at bid). A position still
// open after an instrument's last quote settles at the expiry spot:
// exercised calls pay spot-strike to the holder, delivery costs the writer
// the same, otherwise the option expires worthless. One open position per
// instrument at a time; re-entry is allowed from the next quote onward.

#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "rangevol/calendar.hpp"
#include "rangevol/errors.hpp"
#include "rangevol/money.hpp"

namespace rangevol {

struct OptionQuote {
  Timestamp when;
  Date expiry;
  Money strike;
  Money bid;
  Money ask;
};

void validate(const OptionQuote& q);  // bid >= 0 and bid <= ask

enum class Signal { kSell, kBuy, kNone };

Signal detect_signal(double model_price, const OptionQuote& q, double band);

// True when the one-day relative spot move exceeds `margin`; used (when
// enabled) to suppress new entries on gap days.
bool stop_rule(double prev_spot, double spot, double margin);

enum class Action {
  kSellOpen,
  kBuyOpen,
  kBuyClose,
  kSellClose,
  kExercise,
  kDeliver,
  kExpireWorthless,
};

const char* to_string(Action a);

struct TradeEvent {
  Timestamp when;
  Date expiry;
  Money strike;
  Action action;
  Money cash_flow;  // positive = received
  int position_id = 0;
};

struct PositionSummary {
  int id = 0;
  Date expiry;
  Money strike;
  Timestamp opened;
  Timestamp closed;
  Money profit;
};

struct TradeLedger {
  std::vector<TradeEvent> events;        // chronological
  std::vector<PositionSummary> positions;  // by open time
  Money total;
};

Money ledger_total(const TradeLedger& ledger);

// Model prices keyed by the exact quote stamp and instrument.
class ModelPriceTable {
 public:
  void add(const Timestamp& when, const Date& expiry, Money strike,
           double price);
  std::optional<double> find(const Timestamp& when, const Date& expiry,
                             Money strike) const;
  std::size_t size() const { return prices_.size(); }

 private:
  std::map<std::tuple<Timestamp, Date, Money>, double> prices_;
};

struct StrategyConfig {
  double band = 0.10;
  // When set, stop_rule() gates new entries; needs daily spots.
  std::optional<double> stop_margin;
};

// Runs the strategy over every instrument (expiry, strike) present in
// `quotes`. `expiry_spot` supplies settlement prices (required only for
// instruments whose last position is held past the final quote).
// `daily_spot` feeds the optional stop rule.
TradeLedger run_strategy(std::span<const OptionQuote> quotes,
                         const ModelPriceTable& model,
                         const std::map<Date, Money>& expiry_spot,
                         const StrategyConfig& cfg = {},
                         const std::map<Date, double>& daily_spot = {});

}  // namespace rangevol
