#pragma once

// Strict CSV ingestion, JSON-lines/CSV emission and the shared run
// configuration. Parsers reject exactly what their contracts forbid and
// report the offending file:line; emitters print 12 significant digits for
// model numbers and two decimals for money.

#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rangevol/abm_range.hpp"
#include "rangevol/estimators.hpp"
#include "rangevol/trading.hpp"

namespace rangevol {

struct RunConfig {
  int window = 63;
  double band = 0.10;
  double annualization = 252.0;
  SeriesControl series;
};

// %.12g
std::string fmt_num(double x);

// --- ingestion --------------------------------------------------------

// Header `date,open,high,low,close`; strictly ascending dates; bar
// invariants enforced.
std::vector<OhlcBar> parse_ohlc(std::istream& in, const std::string& name);
std::vector<OhlcBar> parse_ohlc_file(const std::string& path);

// Header `timestamp,expiry,strike,bid,ask`; money columns strict decimal.
std::vector<OptionQuote> parse_quotes(std::istream& in,
                                      const std::string& name);
std::vector<OptionQuote> parse_quotes_file(const std::string& path);

// Header `date,rate` (annualized decimal), strictly ascending dates.
class RateSeries {
 public:
  explicit RateSeries(std::map<Date, double> by_date)
      : by_date_(std::move(by_date)) {}
  // Rate quoted on the most recent date strictly before d; throws when no
  // prior rate exists.
  double for_date(Date d) const;
  std::size_t size() const { return by_date_.size(); }

 private:
  std::map<Date, double> by_date_;
};

RateSeries parse_rates(std::istream& in, const std::string& name);
RateSeries parse_rates_file(const std::string& path);

// --- emission ---------------------------------------------------------

void write_ohlc_csv(std::ostream& out, std::span<const OhlcBar> bars);

// One JSON object per date: v_i, v0, v_z, sigma_annual,
// sigma_annual_intraday, v_yz, v_rs, v_c.
void write_estimates_jsonl(std::ostream& out,
                           std::span<const std::pair<Date, VolEstimate>> rows,
                           double annualization);

// timestamp,expiry,strike,action,cash_flow,position_id
void write_ledger_csv(std::ostream& out, const TradeLedger& ledger);

}  // namespace rangevol
