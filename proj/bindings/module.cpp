// Python bindings for the main operations: the ABM range distributions, the
// moment-matched volatility estimators, the path simulator, call pricing and
// the band signal.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rangevol/abm_range.hpp"
#include "rangevol/estimators.hpp"
#include "rangevol/mc_oracle.hpp"
#include "rangevol/pricing.hpp"
#include "rangevol/trading.hpp"

namespace py = pybind11;
using namespace rangevol;

namespace {

AbmParams make_params(double mu, double sigma, double t) {
  AbmParams p{mu, sigma, t};
  validate(p);
  return p;
}

std::vector<OhlcBar> bars_from_rows(
    const std::vector<std::tuple<std::string, double, double, double, double>>&
        rows) {
  std::vector<OhlcBar> bars;
  bars.reserve(rows.size());
  for (const auto& [date, o, h, l, c] : rows)
    bars.push_back({Date::parse(date), o, h, l, c});
  return bars;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "range-based volatility estimation and arithmetic-Brownian-motion "
      "range distributions";

  py::register_exception<InfeasibleMomentsError>(m, "InfeasibleMomentsError");

  // distributions
  m.def(
      "expected_range",
      [](double mu, double sigma, double t) {
        return expected_range(make_params(mu, sigma, t));
      },
      py::arg("mu"), py::arg("sigma"), py::arg("t"),
      "E[max - min] of mu*t + sigma*W_t over [0, t]");
  m.def(
      "half_range_mean",
      [](double mu, double sigma, double t) {
        return half_range_mean(make_params(mu, sigma, t));
      },
      py::arg("mu"), py::arg("sigma"), py::arg("t"));
  m.def(
      "half_range_density",
      [](double mu, double sigma, double t, double c) {
        return half_range_density(make_params(mu, sigma, t), c);
      },
      py::arg("mu"), py::arg("sigma"), py::arg("t"), py::arg("c"));
  m.def("h_moment", &h_moment, py::arg("x"), py::arg("y"));
  m.def(
      "range_density",
      [](double mu, double sigma, double t, double r) {
        return range_density(make_params(mu, sigma, t), r);
      },
      py::arg("mu"), py::arg("sigma"), py::arg("t"), py::arg("r"));
  m.def(
      "range_density_quadrature",
      [](double mu, double sigma, double t, double r) {
        return range_density_quadrature(make_params(mu, sigma, t), r);
      },
      py::arg("mu"), py::arg("sigma"), py::arg("t"), py::arg("r"));
  m.def(
      "joint_density_max_min",
      [](double mu, double sigma, double t, double a, double b) {
        return joint_density_max_min(make_params(mu, sigma, t), a, b);
      },
      py::arg("mu"), py::arg("sigma"), py::arg("t"), py::arg("a"),
      py::arg("b"));

  // estimators over (date, open, high, low, close) rows
  m.def(
      "estimate",
      [](const std::vector<std::tuple<std::string, double, double, double,
                                      double>>& rows,
         double annualization) {
        const auto bars = bars_from_rows(rows);
        const auto est = estimate(bars, annualization);
        py::dict out;
        out["v_i"] = est.v_intraday;
        out["v0"] = est.v_overnight;
        out["v_z"] = est.v_z;
        out["sigma_annual"] = est.sigma_annual;
        out["v_yz"] = est.v_yz;
        out["v_rs"] = est.v_rs;
        out["v_c"] = est.v_close_open;
        return out;
      },
      py::arg("bars"), py::arg("annualization") = 252.0,
      "volatility estimate from (date, open, high, low, close) rows");
  m.def(
      "solve_intraday_vol",
      [](double k1, double k2) {
        return solve_intraday_vol(MomentInputs{k1, k2, 2});
      },
      py::arg("k1"), py::arg("k2"));

  // simulation
  m.def(
      "simulate_ohlc",
      [](double mu_s, double sigma, double f, std::int64_t n_days,
         std::uint64_t seed, int steps_per_day) {
        SimConfig cfg;
        cfg.after_hours_fraction = f;
        cfg.seed = seed;
        cfg.steps_per_unit = steps_per_day;
        cfg.n_paths = 1;
        std::vector<std::tuple<std::string, double, double, double, double>>
            rows;
        for (const auto& b : simulate_ohlc(mu_s, sigma, cfg, n_days))
          rows.emplace_back(b.date.str(), b.open, b.high, b.low, b.close);
        return rows;
      },
      py::arg("mu_s"), py::arg("sigma"), py::arg("f"), py::arg("n_days"),
      py::arg("seed") = 0, py::arg("steps_per_day") = 10000);
  m.def(
      "simulate_ranges",
      [](double mu, double sigma, double t, std::int64_t n_paths,
         std::uint64_t seed, int steps_per_unit) {
        SimConfig cfg;
        cfg.n_paths = n_paths;
        cfg.seed = seed;
        cfg.steps_per_unit = steps_per_unit;
        std::vector<double> ranges;
        ranges.reserve(n_paths);
        for (const auto& pe :
             simulate_extremes(make_params(mu, sigma, t), cfg))
          ranges.push_back(pe.range);
        return ranges;
      },
      py::arg("mu"), py::arg("sigma"), py::arg("t"), py::arg("n_paths"),
      py::arg("seed") = 0, py::arg("steps_per_unit") = 1000);

  // pricing + signal
  m.def(
      "bs_call",
      [](double spot, double strike, double rate, double vol, double tau) {
        return bs_call(PricingInputs{spot, strike, rate, vol, tau});
      },
      py::arg("spot"), py::arg("strike"), py::arg("rate"), py::arg("vol"),
      py::arg("tau"));
  m.def(
      "detect_signal",
      [](double model_price, double bid, double ask, double band) {
        OptionQuote q;
        q.bid = Money::from_cents(std::llround(bid * 100.0));
        q.ask = Money::from_cents(std::llround(ask * 100.0));
        switch (detect_signal(model_price, q, band)) {
          case Signal::kSell: return "sell";
          case Signal::kBuy: return "buy";
          default: return "none";
        }
      },
      py::arg("model_price"), py::arg("bid"), py::arg("ask"),
      py::arg("band") = 0.10);
}
