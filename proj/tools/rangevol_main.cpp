// rangevol: range-based volatility estimation, ABM range distributions,
// call pricing and a mispricing-band backtest over daily OHLC data.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "rangevol/abm_range.hpp"
#include "rangevol/backtest.hpp"
#include "rangevol/cli_io.hpp"
#include "rangevol/mc_oracle.hpp"
#include "rangevol/pricing.hpp"

namespace {

using namespace rangevol;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  return out;
}

// Writes to --out when given, stdout otherwise.
template <class Fn>
void emit(const std::string& out_path, Fn&& fn) {
  if (out_path.empty()) {
    fn(std::cout);
  } else {
    auto out = open_out(out_path);
    fn(out);
  }
}

void add_series_flags(CLI::App* cmd, SeriesControl& ctl) {
  cmd->add_option("--max-terms", ctl.max_terms, "series truncation cap")
      ->envname("RANGEVOL_MAX_TERMS");
  cmd->add_option("--term-tolerance", ctl.term_tolerance,
                  "relative series stopping tolerance");
}

int run(int argc, char** argv) {
  CLI::App app{
      "range-based volatility estimation and option mispricing toolkit"};
  app.require_subcommand(1);

  // --- estimate ---------------------------------------------------------
  auto* est = app.add_subcommand(
      "estimate", "rolling volatility estimates from an OHLC CSV, JSON lines");
  std::string est_bars, est_out;
  RunConfig est_cfg;
  est->add_option("--bars", est_bars, "OHLC CSV (date,open,high,low,close)")
      ->required();
  est->add_option("--window", est_cfg.window, "trailing window, trading days")
      ->envname("RANGEVOL_WINDOW");
  est->add_option("--annualization", est_cfg.annualization,
                  "periods per year")
      ->envname("RANGEVOL_ANNUALIZATION");
  est->add_option("--out", est_out, "output path (default stdout)");
  est->callback([&] {
    const auto bars = parse_ohlc_file(est_bars);
    const auto rows =
        rolling_estimate(bars, est_cfg.window, est_cfg.annualization);
    emit(est_out, [&](std::ostream& os) {
      write_estimates_jsonl(os, rows, est_cfg.annualization);
    });
  });

  // --- expected-range ----------------------------------------------------
  auto* er = app.add_subcommand("expected-range",
                                "E[range] of an arithmetic Brownian motion");
  AbmParams er_p;
  er->add_option("--mu", er_p.mu, "drift per unit time")->required();
  er->add_option("--sigma", er_p.sigma, "volatility per sqrt(unit time)")
      ->required();
  er->add_option("--t", er_p.t, "horizon")->required();
  er->callback(
      [&] { std::cout << fmt_num(expected_range(er_p)) << "\n"; });

  // --- density ------------------------------------------------------------
  auto* den = app.add_subcommand(
      "density", "range / half-range / joint max-min density grid, CSV");
  AbmParams den_p;
  std::string den_kind = "range", den_out;
  double den_min = 0.0, den_max = 0.0;
  int den_points = 201;
  double den_amin = 0.0, den_amax = 0.0, den_bmin = 0.0, den_bmax = 0.0;
  int den_apoints = 61, den_bpoints = 61;
  SeriesControl den_ctl;
  den->add_option("--kind", den_kind, "range | half-range | joint")
      ->check(CLI::IsMember({"range", "half-range", "joint"}));
  den->add_option("--mu", den_p.mu)->required();
  den->add_option("--sigma", den_p.sigma)->required();
  den->add_option("--t", den_p.t)->required();
  den->add_option("--min", den_min, "grid start (1-D kinds)");
  den->add_option("--max", den_max, "grid end (default drift + 8 sigmas)");
  den->add_option("--points", den_points)->check(CLI::PositiveNumber);
  den->add_option("--amin", den_amin, "joint: minimum-axis start");
  den->add_option("--amax", den_amax, "joint: minimum-axis end (< 0)");
  den->add_option("--bmin", den_bmin, "joint: maximum-axis start (> 0)");
  den->add_option("--bmax", den_bmax, "joint: maximum-axis end");
  den->add_option("--apoints", den_apoints)->check(CLI::PositiveNumber);
  den->add_option("--bpoints", den_bpoints)->check(CLI::PositiveNumber);
  den->add_option("--out", den_out, "output path (default stdout)");
  add_series_flags(den, den_ctl);
  den->callback([&] {
    validate(den_p);
    const double st = den_p.sigma * std::sqrt(den_p.t);
    const double span = std::abs(den_p.mu) * den_p.t + 8.0 * st;
    emit(den_out, [&](std::ostream& os) {
      if (den_kind == "joint") {
        const double alo = den_amin != 0.0 ? den_amin : -span;
        const double ahi = den_amax != 0.0 ? den_amax : -span / den_apoints;
        const double blo = den_bmin != 0.0 ? den_bmin : span / den_bpoints;
        const double bhi = den_bmax != 0.0 ? den_bmax : span;
        os << "a,b,density\n";
        for (int i = 0; i < den_apoints; ++i) {
          const double a =
              alo + (ahi - alo) * i / std::max(1, den_apoints - 1);
          for (int j = 0; j < den_bpoints; ++j) {
            const double b =
                blo + (bhi - blo) * j / std::max(1, den_bpoints - 1);
            os << fmt_num(a) << ',' << fmt_num(b) << ','
               << fmt_num(joint_density_max_min(den_p, a, b, den_ctl)) << '\n';
          }
        }
        return;
      }
      const double hi = den_max != 0.0 ? den_max : span;
      os << (den_kind == "range" ? "r,density\n" : "c,density\n");
      for (int i = 0; i < den_points; ++i) {
        const double x =
            den_min + (hi - den_min) * i / std::max(1, den_points - 1);
        const double f = den_kind == "range"
                             ? range_density(den_p, x, den_ctl)
                             : half_range_density(den_p, x);
        os << fmt_num(x) << ',' << fmt_num(f) << '\n';
      }
    });
  });

  // --- simulate -----------------------------------------------------------
  auto* sim = app.add_subcommand(
      "simulate", "seeded synthetic OHLC bars (geometric Brownian motion)");
  double sim_mu_s = 0.0, sim_sigma = 0.0, sim_spot0 = 100.0;
  std::int64_t sim_days = 0;
  SimConfig sim_cfg;
  std::string sim_out, sim_start = "2000-01-03";
  sim->add_option("--mu-s", sim_mu_s, "price drift per one-day period")
      ->required();
  sim->add_option("--sigma", sim_sigma, "volatility per sqrt(day)")
      ->required();
  sim->add_option("--f", sim_cfg.after_hours_fraction,
                  "after-hours fraction of the one-day period");
  sim->add_option("--days", sim_days, "number of bars")->required();
  sim->add_option("--seed", sim_cfg.seed)->envname("RANGEVOL_SEED");
  sim->add_option("--steps", sim_cfg.steps_per_unit, "grid steps per day")
      ->envname("RANGEVOL_STEPS");
  sim->add_option("--spot0", sim_spot0, "initial price");
  sim->add_option("--start-date", sim_start, "first bar date");
  sim->add_option("--out", sim_out, "output path (default stdout)");
  sim->callback([&] {
    sim_cfg.n_paths = 1;  // unused by the bar simulator, must validate
    const auto bars = simulate_ohlc(sim_mu_s, sim_sigma, sim_cfg, sim_days,
                                    sim_spot0, Date::parse(sim_start));
    emit(sim_out, [&](std::ostream& os) { write_ohlc_csv(os, bars); });
  });

  // --- price ---------------------------------------------------------------
  auto* pr = app.add_subcommand("price", "Black-Scholes European call value");
  PricingInputs pr_in;
  std::optional<double> pr_days;
  std::string pr_count = "trading";
  pr->add_option("--spot", pr_in.spot)->required();
  pr->add_option("--strike", pr_in.strike)->required();
  pr->add_option("--rate", pr_in.rate, "annualized, continuous compounding")
      ->required();
  pr->add_option("--vol", pr_in.vol, "annualized volatility")->required();
  pr->add_option("--tau", pr_in.tau, "years to expiry");
  pr->add_option("--days", pr_days, "days to expiry (see --day-count)");
  pr->add_option("--day-count", pr_count, "trading (/252) or calendar (/365)")
      ->check(CLI::IsMember({"trading", "calendar"}));
  pr->callback([&] {
    if (pr_days) pr_in.tau = *pr_days / (pr_count == "trading" ? 252.0 : 365.0);
    std::cout << fmt_num(bs_call(pr_in)) << "\n";
  });

  // --- backtest -------------------------------------------------------------
  auto* bt = app.add_subcommand(
      "backtest", "mispricing-band strategy over a quote series");
  std::string bt_bars, bt_quotes, bt_rates, bt_out, bt_vol = "intraday";
  BacktestConfig bt_cfg;
  bt->add_option("--bars", bt_bars, "OHLC CSV")->required();
  bt->add_option("--quotes", bt_quotes,
                 "quotes CSV (timestamp,expiry,strike,bid,ask)")
      ->required();
  bt->add_option("--rates", bt_rates, "rate CSV (date,rate)");
  bt->add_option("--rate", bt_cfg.constant_rate, "constant rate override");
  bt->add_option("--band", bt_cfg.band, "mispricing band (default 0.10)")
      ->envname("RANGEVOL_BAND");
  bt->add_option("--stop-margin", bt_cfg.stop_margin,
                 "suppress entries when the daily spot move exceeds this");
  bt->add_option("--window", bt_cfg.window, "estimation window, trading days")
      ->envname("RANGEVOL_WINDOW");
  bt->add_option("--vol-source", bt_vol, "intraday | total")
      ->check(CLI::IsMember({"intraday", "total"}));
  bt->add_option("--out", bt_out, "ledger CSV path (default stdout)");
  bt->callback([&] {
    bt_cfg.use_total_vol = bt_vol == "total";
    const auto bars = parse_ohlc_file(bt_bars);
    const auto quotes = parse_quotes_file(bt_quotes);
    std::optional<RateSeries> rates;
    if (!bt_rates.empty()) rates = parse_rates_file(bt_rates);
    const auto ledger =
        run_backtest(bars, quotes, rates ? &*rates : nullptr, bt_cfg);
    emit(bt_out, [&](std::ostream& os) { write_ledger_csv(os, ledger); });
    std::cout << "total " << ledger.total.str() << "\n";
  });

  CLI11_PARSE(app, argc, argv);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
