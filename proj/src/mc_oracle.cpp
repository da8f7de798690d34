#include "rangevol/mc_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rangevol/rng.hpp"

namespace rangevol {

namespace {

// Keeps a mistyped config from locking the machine for hours.
constexpr double kMaxTotalSteps = 1e11;

}  // namespace

void validate(const SimConfig& cfg) {
  if (cfg.steps_per_unit < 1)
    throw ParamError("SimConfig: steps_per_unit must be >= 1");
  if (cfg.n_paths < 1) throw ParamError("SimConfig: n_paths must be >= 1");
  if (!(cfg.after_hours_fraction >= 0.0 && cfg.after_hours_fraction < 1.0))
    throw ParamError("SimConfig: after-hours fraction must be in [0, 1)");
}

std::vector<PathExtremes> simulate_extremes(const AbmParams& p,
                                            const SimConfig& cfg) {
  validate(p);
  validate(cfg);
  const std::int64_t n_steps =
      std::max<std::int64_t>(1, std::llround(cfg.steps_per_unit * p.t));
  if (static_cast<double>(n_steps) * static_cast<double>(cfg.n_paths) >
      kMaxTotalSteps)
    throw Error("simulate_extremes: n_paths * steps exceeds the step budget");

  const double dt = p.t / static_cast<double>(n_steps);
  const double mu_dt = p.mu * dt;
  const double sig_sqdt = p.sigma * std::sqrt(dt);
  const double bias = cfg.bias_correction ? kExtremeBiasCoeff * sig_sqdt : 0.0;
  const auto& zig = ziggurat();

  std::vector<PathExtremes> out(static_cast<std::size_t>(cfg.n_paths));
  for (std::int64_t j = 0; j < cfg.n_paths; ++j) {
    const std::uint64_t stream = cfg.antithetic ? j / 2 : j;
    const double flip = (cfg.antithetic && (j & 1)) ? -1.0 : 1.0;
    Xoshiro256pp rng(cfg.seed, stream);
    double x = 0.0, mx = 0.0, mn = 0.0;
    for (std::int64_t s = 0; s < n_steps; ++s) {
      x += mu_dt + flip * sig_sqdt * zig(rng);
      mx = x > mx ? x : mx;
      mn = x < mn ? x : mn;
    }
    out[static_cast<std::size_t>(j)] =
        PathExtremes{x, mx + bias, mn - bias, (mx - mn) + 2.0 * bias};
  }
  return out;
}

std::vector<OhlcBar> simulate_ohlc(double mu_s, double sigma,
                                   const SimConfig& cfg, std::int64_t n_days,
                                   double spot0, Date start) {
  if (!(sigma > 0.0)) throw ParamError("simulate_ohlc: sigma must be > 0");
  if (n_days < 1) throw ParamError("simulate_ohlc: n_days must be >= 1");
  if (!(spot0 > 0.0)) throw ParamError("simulate_ohlc: spot0 must be > 0");
  validate(cfg);
  if (static_cast<double>(cfg.steps_per_unit) * static_cast<double>(n_days) >
      kMaxTotalSteps)
    throw Error("simulate_ohlc: n_days * steps exceeds the step budget");

  const double mu = mu_s - 0.5 * sigma * sigma;  // log-price drift
  const std::int64_t steps = cfg.steps_per_unit;
  const std::int64_t trade_steps = std::llround(
      (1.0 - cfg.after_hours_fraction) * static_cast<double>(steps));
  const double dt = 1.0 / static_cast<double>(steps);
  const double mu_dt = mu * dt;
  const double sig_sqdt = sigma * std::sqrt(dt);
  const double bias = cfg.bias_correction ? kExtremeBiasCoeff * sig_sqdt : 0.0;
  const auto& zig = ziggurat();

  std::vector<OhlcBar> bars(static_cast<std::size_t>(n_days));
  double log_open = std::log(spot0);
  Date date = start.is_weekend() ? start.next_trading_day() : start;
  for (std::int64_t day = 0; day < n_days; ++day) {
    Xoshiro256pp rng(cfg.seed, static_cast<std::uint64_t>(day));
    double x = 0.0, mx = 0.0, mn = 0.0, close_off = 0.0;
    for (std::int64_t s = 0; s < steps; ++s) {
      x += mu_dt + sig_sqdt * zig(rng);
      if (s < trade_steps) {
        mx = x > mx ? x : mx;
        mn = x < mn ? x : mn;
        close_off = x;
      }
    }
    auto& bar = bars[static_cast<std::size_t>(day)];
    bar.date = date;
    bar.open = std::exp(log_open);
    bar.high = std::exp(log_open + mx + bias);
    bar.low = std::exp(log_open + mn - bias);
    bar.close = std::exp(log_open + close_off);
    log_open += x;  // after-hours end is the next open
    date = date.next_trading_day();
  }
  return bars;
}

SampleStats sample_stats(std::span<const double> xs) {
  if (xs.empty()) throw ParamError("sample_stats: empty sample");
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= static_cast<double>(xs.size());
  if (xs.size() == 1) return SampleStats{mean, 0.0};
  double ss = 0.0;
  for (double x : xs) {
    const double d = x - mean;
    ss += d * d;
  }
  const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  return SampleStats{mean, sd / std::sqrt(static_cast<double>(xs.size()))};
}

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples)
    : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw ParamError("EmpiricalCdf: empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto it = std::upper_bound(sorted_.begin(), sorted_.end(), x);
  return static_cast<double>(it - sorted_.begin()) /
         static_cast<double>(sorted_.size());
}

double ks_distance(const EmpiricalCdf& empirical,
                   const std::function<double(double)>& cdf) {
  const auto& xs = empirical.sorted();
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    d = std::max(d, std::abs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

}  // namespace rangevol
