#pragma once

// Daily-bar volatility estimators. The core estimate matches the sample mean
// log-range k1 and mean open-to-close log-return k2 against the expected
// range of an arithmetic Brownian motion over the trading day, solving
// k1 = h(k2/x, x^2/k2) for x = sigma*sqrt(1-f) (f = after-hours fraction of
// the one-day period). The intraday variance x^2 plus the overnight sample
// variance gives the one-day-period variance V_Z = V_0 + V_i, annualized as
// sigma_a = sqrt(252 * V_Z). Close-open, Rogers-Satchell and Yang-Zhang
// variances are computed alongside for comparison.

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "rangevol/calendar.hpp"
#include "rangevol/errors.hpp"

namespace rangevol {

struct OhlcBar {
  Date date;
  double open = 0.0;
  double high = 0.0;
  double low = 0.0;
  double close = 0.0;
};

// Throws ParamError unless 0 < low <= min(open, close) and
// max(open, close) <= high.
void validate(const OhlcBar& bar);

struct MomentInputs {
  double k1 = 0.0;    // mean log(H/L)
  double k2 = 0.0;    // mean log(C/O)
  std::size_t n = 0;  // bars used
};

// k1 and k2 over at least two valid bars. A bar invariant violation is
// reported with its index.
MomentInputs compute_moments(std::span<const OhlcBar> bars);

// Root of k1 = h(k2/x, x^2/k2) on x > 0. Even in k2. When |k2|/k1 < 1e-8
// returns the driftless closed form k1*sqrt(2*pi)/4. Throws
// InfeasibleMomentsError when k1 <= |k2| (the equation's range over x > 0 is
// (|k2|, inf)) and NoConvergenceError past max_iter.
double solve_intraday_vol(const MomentInputs& m, double tol = 1e-12,
                          int max_iter = 200);

// Variance of the overnight returns log(O_{i+1}/C_i), i = 1..n-1.
// centered: unbiased sample variance (divisor n-2); otherwise the mean of
// squares. Needs n >= 3 bars.
double overnight_variance(std::span<const OhlcBar> bars, bool centered = true);

// Unbiased sample variance of log(C_i/O_i) over all n bars (divisor n-1).
double close_open_variance(std::span<const OhlcBar> bars);

// (1/n) sum of u(u-c) + d(d-c), u = log(H/O), d = log(L/O), c = log(C/O).
double rogers_satchell(std::span<const OhlcBar> bars);

// V_0 + k*V_C + (1-k)*V_RS with the minimum-variance weight
// k = 0.34 / (1.34 + (n+1)/(n-1)) unless overridden.
double yang_zhang(std::span<const OhlcBar> bars,
                  std::optional<double> k = std::nullopt);

struct VolEstimate {
  double v_intraday = 0.0;              // x^2, trading-day part
  double v_overnight = 0.0;             // V_0, centered
  double v_overnight_noncentered = 0.0; // V_0'
  double v_close_open = 0.0;            // V_C
  double v_rs = 0.0;                    // V_RS
  double v_yz = 0.0;                    // V_YZ
  double v_z = 0.0;                     // V_0 + V_i
  double sigma_annual = 0.0;            // sqrt(annualization * V_Z)
};

VolEstimate estimate(std::span<const OhlcBar> bars,
                     double annualization = 252.0);

// estimate() over a trailing window advanced one bar at a time; one entry per
// date with a full window.
std::vector<std::pair<Date, VolEstimate>> rolling_estimate(
    std::span<const OhlcBar> bars, int window = 63,
    double annualization = 252.0);

}  // namespace rangevol
