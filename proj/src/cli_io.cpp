#include "rangevol/cli_io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace rangevol {

std::string fmt_num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

namespace {

[[noreturn]] void fail(const std::string& name, std::size_t line,
                       const std::string& msg) {
  throw ParseError(name + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& name, std::size_t line,
                    const std::string& field) {
  if (field.empty()) fail(name, line, "empty numeric field");
  char* end = nullptr;
  const double v = std::strtod(field.c_str(), &end);
  if (end != field.c_str() + field.size())
    fail(name, line, "bad number '" + field + "'");
  return v;
}

// Splits one CSV line; tolerates a trailing CR (CRLF input).
std::vector<std::string> split_csv(std::string line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= line.size(); ++i) {
    if (i == line.size() || line[i] == ',') {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// Reads the header and every data row, dispatching to `row`.
template <class RowFn>
void read_csv(std::istream& in, const std::string& name,
              const std::string& header, std::size_t n_cols, RowFn&& row) {
  std::string line;
  if (!std::getline(in, line)) fail(name, 1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != header)
    fail(name, 1, "bad header '" + line + "' (want '" + header + "')");
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv(std::move(line));
    if (fields.size() != n_cols)
      fail(name, lineno,
           "expected " + std::to_string(n_cols) + " fields, got " +
               std::to_string(fields.size()));
    row(lineno, fields);
  }
}

template <class Parse>
auto parse_file(const std::string& path, Parse&& parse) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return parse(in, path);
}

}  // namespace

std::vector<OhlcBar> parse_ohlc(std::istream& in, const std::string& name) {
  std::vector<OhlcBar> bars;
  read_csv(in, name, "date,open,high,low,close", 5,
           [&](std::size_t lineno, const std::vector<std::string>& f) {
             OhlcBar bar;
             try {
               bar.date = Date::parse(f[0]);
             } catch (const ParseError& e) {
               fail(name, lineno, e.what());
             }
             bar.open = parse_double(name, lineno, f[1]);
             bar.high = parse_double(name, lineno, f[2]);
             bar.low = parse_double(name, lineno, f[3]);
             bar.close = parse_double(name, lineno, f[4]);
             try {
               validate(bar);
             } catch (const ParamError& e) {
               fail(name, lineno, e.what());
             }
             if (!bars.empty() && !(bars.back().date < bar.date))
               fail(name, lineno,
                    "dates must be strictly ascending ('" + f[0] + "' after '" +
                        bars.back().date.str() + "')");
             bars.push_back(bar);
           });
  return bars;
}

std::vector<OhlcBar> parse_ohlc_file(const std::string& path) {
  return parse_file(path,
                    [](std::istream& in, const std::string& n) {
                      return parse_ohlc(in, n);
                    });
}

std::vector<OptionQuote> parse_quotes(std::istream& in,
                                      const std::string& name) {
  std::vector<OptionQuote> quotes;
  read_csv(in, name, "timestamp,expiry,strike,bid,ask", 5,
           [&](std::size_t lineno, const std::vector<std::string>& f) {
             OptionQuote q;
             try {
               q.when = Timestamp::parse(f[0]);
               q.expiry = Date::parse(f[1]);
               q.strike = Money::parse(f[2]);
               q.bid = Money::parse(f[3]);
               q.ask = Money::parse(f[4]);
               validate(q);
             } catch (const Error& e) {
               fail(name, lineno, e.what());
             }
             quotes.push_back(q);
           });
  return quotes;
}

std::vector<OptionQuote> parse_quotes_file(const std::string& path) {
  return parse_file(path,
                    [](std::istream& in, const std::string& n) {
                      return parse_quotes(in, n);
                    });
}

RateSeries parse_rates(std::istream& in, const std::string& name) {
  std::map<Date, double> rates;
  Date last{};
  bool any = false;
  read_csv(in, name, "date,rate", 2,
           [&](std::size_t lineno, const std::vector<std::string>& f) {
             Date d;
             try {
               d = Date::parse(f[0]);
             } catch (const ParseError& e) {
               fail(name, lineno, e.what());
             }
             if (any && !(last < d))
               fail(name, lineno, "dates must be strictly ascending");
             rates[d] = parse_double(name, lineno, f[1]);
             last = d;
             any = true;
           });
  return RateSeries(std::move(rates));
}

RateSeries parse_rates_file(const std::string& path) {
  return parse_file(path,
                    [](std::istream& in, const std::string& n) {
                      return parse_rates(in, n);
                    });
}

double RateSeries::for_date(Date d) const {
  auto it = by_date_.lower_bound(d);
  if (it == by_date_.begin())
    throw Error("no rate quoted before " + d.str());
  return std::prev(it)->second;
}

void write_ohlc_csv(std::ostream& out, std::span<const OhlcBar> bars) {
  out << "date,open,high,low,close\n";
  for (const auto& b : bars)
    out << b.date.str() << ',' << fmt_num(b.open) << ',' << fmt_num(b.high)
        << ',' << fmt_num(b.low) << ',' << fmt_num(b.close) << '\n';
}

void write_estimates_jsonl(std::ostream& out,
                           std::span<const std::pair<Date, VolEstimate>> rows,
                           double annualization) {
  for (const auto& [date, est] : rows) {
    out << "{\"date\":\"" << date.str() << "\""
        << ",\"v_i\":" << fmt_num(est.v_intraday)
        << ",\"v0\":" << fmt_num(est.v_overnight)
        << ",\"v_z\":" << fmt_num(est.v_z)
        << ",\"sigma_annual\":" << fmt_num(est.sigma_annual)
        << ",\"sigma_annual_intraday\":"
        << fmt_num(std::sqrt(annualization * est.v_intraday))
        << ",\"v_yz\":" << fmt_num(est.v_yz)
        << ",\"v_rs\":" << fmt_num(est.v_rs)
        << ",\"v_c\":" << fmt_num(est.v_close_open) << "}\n";
  }
}

void write_ledger_csv(std::ostream& out, const TradeLedger& ledger) {
  out << "timestamp,expiry,strike,action,cash_flow,position_id\n";
  for (const auto& e : ledger.events)
    out << e.when.str() << ',' << e.expiry.str() << ',' << e.strike.str()
        << ',' << to_string(e.action) << ',' << e.cash_flow.str() << ','
        << e.position_id << '\n';
}

}  // namespace rangevol
