#pragma once

// Seeded path simulation used to verify the closed forms and the estimator
// round trip. Paths are Euler grids: X_j = X_{j-1} + mu*dt + sigma*sqrt(dt)*Z.
// Grid extremes understate continuous extremes by about 0.5826*sigma*sqrt(dt)
// per extreme; bias_correction adds that back when tight agreement with the
// continuous-time formulas is wanted.

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "rangevol/abm_range.hpp"
#include "rangevol/calendar.hpp"
#include "rangevol/estimators.hpp"

namespace rangevol {

// -zeta(1/2)/sqrt(2*pi): leading coefficient of the discrete-monitoring bias
// of a Brownian extreme.
inline constexpr double kExtremeBiasCoeff = 0.5825971579390107;

struct PathExtremes {
  double terminal = 0.0;
  double maximum = 0.0;
  double minimum = 0.0;
  double range = 0.0;
};

struct SimConfig {
  int steps_per_unit = 10000;
  std::int64_t n_paths = 0;
  std::uint64_t seed = 0;
  double after_hours_fraction = 0.0;  // f in [0, 1)
  bool bias_correction = false;
  bool antithetic = false;
};

void validate(const SimConfig& cfg);

// n_paths independent paths over [0, p.t]; extremes taken over the grid
// (including the start at 0). Path j depends only on (seed, j), so results
// are bit-identical regardless of evaluation order.
std::vector<PathExtremes> simulate_extremes(const AbmParams& p,
                                            const SimConfig& cfg);

// Synthetic one-day-period bars for a geometric Brownian price with
// per-day-period drift mu_s and volatility sigma (log drift mu_s - sigma^2/2).
// Each day: a trading segment of length 1-f produces open/high/low/close
// (high and low observed only there), then an unobserved after-hours segment
// of length f ends at the next open. Dates advance over weekdays from
// `start`.
std::vector<OhlcBar> simulate_ohlc(double mu_s, double sigma,
                                   const SimConfig& cfg, std::int64_t n_days,
                                   double spot0 = 100.0,
                                   Date start = Date{2000, 1, 3});

struct SampleStats {
  double mean = 0.0;
  double se = 0.0;  // sd(divisor n-1)/sqrt(n)
};

SampleStats sample_stats(std::span<const double> xs);

// Right-continuous step CDF: F(x) = #{sample <= x}/n.
class EmpiricalCdf {
 public:
  explicit EmpiricalCdf(std::vector<double> samples);
  double operator()(double x) const;
  const std::vector<double>& sorted() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

// Kolmogorov-Smirnov distance between the empirical CDF of `samples` and a
// continuous CDF.
double ks_distance(const EmpiricalCdf& empirical,
                   const std::function<double(double)>& cdf);

}  // namespace rangevol
