#include "rangevol/estimators.hpp"

#include <cmath>
#include <string>

#include "rangevol/abm_range.hpp"
#include "rangevol/math_util.hpp"

namespace rangevol {

void validate(const OhlcBar& bar) {
  const bool ok = bar.low > 0.0 && bar.low <= bar.open &&
                  bar.low <= bar.close && bar.open <= bar.high &&
                  bar.close <= bar.high && std::isfinite(bar.open) &&
                  std::isfinite(bar.high) && std::isfinite(bar.low) &&
                  std::isfinite(bar.close);
  if (!ok)
    throw ParamError("bar " + bar.date.str() +
                     ": need 0 < low <= open,close <= high");
}

namespace {

void validate_bars(std::span<const OhlcBar> bars) {
  for (std::size_t i = 0; i < bars.size(); ++i) {
    try {
      validate(bars[i]);
    } catch (const ParamError& e) {
      throw ParamError("bar #" + std::to_string(i) + " " + e.what());
    }
  }
}

// Unbiased sample variance, divisor n-1.
template <class Get>
double sample_variance(std::size_t n, Get&& get) {
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) mean += get(i);
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = get(i) - mean;
    ss += d * d;
  }
  return ss / static_cast<double>(n - 1);
}

}  // namespace

MomentInputs compute_moments(std::span<const OhlcBar> bars) {
  if (bars.size() < 2)
    throw ParamError("compute_moments: need at least 2 bars, got " +
                     std::to_string(bars.size()));
  validate_bars(bars);
  double k1 = 0.0, k2 = 0.0;
  for (const auto& b : bars) {
    k1 += std::log(b.high / b.low);
    k2 += std::log(b.close / b.open);
  }
  const double n = static_cast<double>(bars.size());
  return MomentInputs{k1 / n, k2 / n, bars.size()};
}

double solve_intraday_vol(const MomentInputs& m, double tol, int max_iter) {
  const double k1 = m.k1;
  const double ak2 = std::abs(m.k2);  // h is even in k2
  if (!(k1 > 0.0) || k1 <= ak2)
    throw InfeasibleMomentsError(
        "moment equation has no root: k1 = " + std::to_string(k1) +
        " <= |k2| = " + std::to_string(ak2));
  if (ak2 / k1 < 1e-8) return k1 * kSqrt2Pi / 4.0;

  // g(x) = E[range of ABM(mu=|k2|, sigma=x, t=1)] - k1, strictly increasing,
  // with g -> |k2| - k1 < 0 as x -> 0 and g(k1) >= (sqrt(8/pi)-1)*k1 > 0.
  const auto g = [&](double x) {
    return h_moment(ak2 / x, x * x / ak2) - k1;
  };
  double lo = 1e-12 * k1, hi = k1;
  double glo = g(lo), ghi = g(hi);
  if (glo > 0.0 || ghi < 0.0)
    throw NoConvergenceError("solve_intraday_vol: root not bracketed");
  int last_side = 0;  // Illinois bookkeeping: -1 lo moved, +1 hi moved
  for (int it = 0; it < max_iter; ++it) {
    double cand = hi - ghi * (hi - lo) / (ghi - glo);
    if (!(cand > lo && cand < hi)) cand = 0.5 * (lo + hi);
    const double gx = g(cand);
    if (std::abs(gx) <= tol * k1) return cand;
    if (gx < 0.0) {
      lo = cand;
      glo = gx;
      if (last_side < 0) ghi *= 0.5;
      last_side = -1;
    } else {
      hi = cand;
      ghi = gx;
      if (last_side > 0) glo *= 0.5;
      last_side = 1;
    }
    if (hi - lo <= 1e-15 * hi) return 0.5 * (lo + hi);
  }
  throw NoConvergenceError("solve_intraday_vol: no root after " +
                           std::to_string(max_iter) + " iterations");
}

double overnight_variance(std::span<const OhlcBar> bars, bool centered) {
  if (bars.size() < 3)
    throw ParamError("overnight_variance: need at least 3 bars");
  validate_bars(bars);
  const std::size_t n = bars.size() - 1;  // overnight returns
  const auto o = [&](std::size_t i) {
    return std::log(bars[i + 1].open / bars[i].close);
  };
  if (centered) return sample_variance(n, o);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) ss += o(i) * o(i);
  return ss / static_cast<double>(n);
}

double close_open_variance(std::span<const OhlcBar> bars) {
  if (bars.size() < 2)
    throw ParamError("close_open_variance: need at least 2 bars");
  validate_bars(bars);
  return sample_variance(bars.size(), [&](std::size_t i) {
    return std::log(bars[i].close / bars[i].open);
  });
}

double rogers_satchell(std::span<const OhlcBar> bars) {
  if (bars.empty()) throw ParamError("rogers_satchell: no bars");
  validate_bars(bars);
  double acc = 0.0;
  for (const auto& b : bars) {
    const double u = std::log(b.high / b.open);
    const double d = std::log(b.low / b.open);
    const double c = std::log(b.close / b.open);
    acc += u * (u - c) + d * (d - c);
  }
  return acc / static_cast<double>(bars.size());
}

double yang_zhang(std::span<const OhlcBar> bars, std::optional<double> k) {
  if (bars.size() < 3) throw ParamError("yang_zhang: need at least 3 bars");
  const double n = static_cast<double>(bars.size());
  const double kk = k ? *k : 0.34 / (1.34 + (n + 1.0) / (n - 1.0));
  return overnight_variance(bars, /*centered=*/true) +
         kk * close_open_variance(bars) +
         (1.0 - kk) * rogers_satchell(bars);
}

VolEstimate estimate(std::span<const OhlcBar> bars, double annualization) {
  if (bars.size() < 3) throw ParamError("estimate: need at least 3 bars");
  VolEstimate out;
  const double x = solve_intraday_vol(compute_moments(bars));
  out.v_intraday = x * x;
  out.v_overnight = overnight_variance(bars, /*centered=*/true);
  out.v_overnight_noncentered = overnight_variance(bars, /*centered=*/false);
  out.v_close_open = close_open_variance(bars);
  out.v_rs = rogers_satchell(bars);
  out.v_yz = yang_zhang(bars);
  out.v_z = out.v_overnight + out.v_intraday;
  out.sigma_annual = std::sqrt(annualization * out.v_z);
  return out;
}

std::vector<std::pair<Date, VolEstimate>> rolling_estimate(
    std::span<const OhlcBar> bars, int window, double annualization) {
  if (window < 3) throw ParamError("rolling_estimate: window must be >= 3");
  if (bars.size() < static_cast<std::size_t>(window))
    throw ParamError("rolling_estimate: window " + std::to_string(window) +
                     " larger than data (" + std::to_string(bars.size()) +
                     " bars)");
  std::vector<std::pair<Date, VolEstimate>> out;
  out.reserve(bars.size() - window + 1);
  for (std::size_t end = window; end <= bars.size(); ++end) {
    const auto win = bars.subspan(end - window, window);
    out.emplace_back(win.back().date, estimate(win, annualization));
  }
  return out;
}

}  // namespace rangevol
