#include "rangevol/abm_range.hpp"

#include <cmath>
#include <string>

#include "rangevol/math_util.hpp"
#include "rangevol/quadrature.hpp"

namespace rangevol {

namespace {

// Below |mu|*sqrt(t)/sigma = 1e-8 the sigma^2/mu terms of the closed forms
// are 0*inf indeterminate; the analytic mu -> 0 limits take over.
constexpr double kDriftEps = 1e-8;

// Confinement width (in units of sigma*sqrt(t)) under which the whole
// confined mass is < 1e-100; the series evaluators return 0 there.
constexpr double kMinWidthFactor = 0.13;

// Sum reflection levels k = 0, +-1, +-2, ... until `consecutive_small`
// successive level contributions are negligible against the running sum.
template <class Term>
double sum_levels(const SeriesControl& ctl, Term&& term) {
  double sum = term(0);
  int run = 0;
  for (int j = 1; j <= ctl.max_terms; ++j) {
    const double contrib = term(j) + term(-j);
    sum += contrib;
    if (sum != 0.0 &&
        std::abs(contrib) <= ctl.term_tolerance * std::abs(sum) + 1e-300) {
      if (++run >= ctl.consecutive_small) break;
    } else {
      run = 0;
    }
  }
  return sum;
}

}  // namespace

void validate(const AbmParams& p) {
  if (!(p.sigma > 0.0) || !std::isfinite(p.sigma))
    throw ParamError("AbmParams: sigma must be > 0, got " +
                     std::to_string(p.sigma));
  if (!(p.t > 0.0) || !std::isfinite(p.t))
    throw ParamError("AbmParams: t must be > 0, got " + std::to_string(p.t));
  if (!std::isfinite(p.mu))
    throw ParamError("AbmParams: mu must be finite");
}

double joint_density_max(const AbmParams& p, double a, double b) {
  validate(p);
  if (b < 0.0 || b < a) return 0.0;
  const double s2 = p.sigma * p.sigma;
  const double q = 2.0 * b - a;
  const double log_term = -q * q / (2.0 * p.t * s2) + p.mu * a / s2 -
                          0.5 * p.mu * p.mu * p.t / s2;
  if (log_term < kLogTiny) return 0.0;
  return 2.0 * q / (kSqrt2Pi * std::sqrt(p.t * p.t * p.t) * s2 * p.sigma) *
         std::exp(log_term);
}

double half_range_density(const AbmParams& p, double c) {
  validate(p);
  if (c < 0.0) return 0.0;
  const double s2 = p.sigma * p.sigma;
  const double st = p.sigma * std::sqrt(p.t);
  // First term pairs exp(-2 mu c / sigma^2) with a normal tail; for mu < 0
  // the exponential grows while the tail vanishes, so keep them together.
  const double drift_term =
      2.0 * p.mu / s2 *
      scaled_ncdf(-2.0 * p.mu * c / s2, (p.mu * p.t - c) / st);
  const double gauss_term = 2.0 / (st * kSqrt2Pi) *
                            std::exp(-(p.mu * p.t + c) * (p.mu * p.t + c) /
                                     (2.0 * p.t * s2));
  return drift_term + gauss_term;
}

double half_range_mean(const AbmParams& p) {
  validate(p);
  const double st = p.sigma * std::sqrt(p.t);
  const double c0 = p.mu * std::sqrt(p.t) / p.sigma;
  if (std::abs(c0) < kDriftEps) return st * std::sqrt(2.0 / kPi);
  const double half_y = p.sigma * p.sigma / (2.0 * p.mu);
  return half_y * norm_cdf(c0) - (p.mu * p.t + half_y) * norm_cdf(-c0) +
         st * norm_pdf(c0);
}

double expected_range(const AbmParams& p) {
  validate(p);
  const double st = p.sigma * std::sqrt(p.t);
  // Even in mu; evaluate with |mu| so the symmetry is exact.
  const double amu = std::abs(p.mu);
  const double c0 = amu * std::sqrt(p.t) / p.sigma;
  if (c0 < kDriftEps) return st * std::sqrt(8.0 / kPi);
  return (amu * p.t + p.sigma * p.sigma / amu) * (1.0 - 2.0 * norm_cdf(-c0)) +
         2.0 * st * norm_pdf(c0);
}

double h_moment(double x, double y) {
  // 2 Phi(x) - 1 = erf(x / sqrt(2)), exact at x = 0.
  return ((x * x + 1.0) * std::erf(x * kInvSqrt2) +
          2.0 * x * norm_pdf(x)) *
         y;
}

double confined_density(const AbmParams& p, double x, double a, double b,
                        const SeriesControl& ctl, ConfinedForm form) {
  validate(p);
  if (!(a < 0.0 && 0.0 < b))
    throw ParamError("confined_density: need a < 0 < b");
  if (!(a <= x && x <= b))
    throw ParamError("confined_density: x outside [a, b]");
  const double st = p.sigma * std::sqrt(p.t);
  const double w = b - a;
  if (w < kMinWidthFactor * st) return 0.0;
  const double sum = sum_levels(ctl, [&](int k) {
    const double kw = 2.0 * k * w;
    if (form == ConfinedForm::kFeller) {
      return norm_pdf((kw - x) / st) - norm_pdf((kw - 2.0 * b + x) / st);
    }
    return norm_pdf((x + kw) / st) - norm_pdf((2.0 * b - x + kw) / st);
  });
  return sum / st;
}

double joint_density_max_min(const AbmParams& p, double a, double b,
                             const SeriesControl& ctl) {
  validate(p);
  if (!(a < 0.0))
    throw ParamError("joint_density_max_min: need minimum a < 0");
  if (!(b > 0.0))
    throw ParamError("joint_density_max_min: need maximum b > 0");
  const double st = p.sigma * std::sqrt(p.t);
  const double w = b - a;
  if (w < kMinWidthFactor * st) return 0.0;
  const double s2 = p.sigma * p.sigma;
  const double c = p.mu * std::sqrt(p.t) / p.sigma;
  const double c2 = c * c;
  const double inv = 1.0 / (s2 * p.t);

  // Each level combines the reflected-at-b and reflected-at-0 images with the
  // Girsanov drift weight folded into the scaled products. The Phi terms come
  // in differences (arguments an interval of width (b-a)/st apart), which is
  // what keeps the drift-heavy corners finite.
  const double sum = sum_levels(ctl, [&](int k) {
    double tot = 0.0;
    if (k != 0 && k != 1) {
      const double coef = 4.0 * k * (k - 1.0) * inv;
      const double pk = -p.mu * (2.0 * (k - 1.0) * b - 2.0 * k * a) / s2;
      const double z2 = ((2.0 * k - 1.0) * b - 2.0 * k * a - p.mu * p.t) / st;
      const double z1 =
          (2.0 * (k - 1.0) * b - (2.0 * k - 1.0) * a - p.mu * p.t) / st;
      tot += coef * ((2.0 * c + z2) * scaled_npdf(pk, z2) -
                     (2.0 * c + z1) * scaled_npdf(pk, z1) -
                     c2 * scaled_ncdf_diff(pk, z1, z2));
    }
    if (k != 0) {
      const double coef = 4.0 * k * k * inv;
      const double qk = -2.0 * k * p.mu * w / s2;
      const double y2 = ((2.0 * k + 1.0) * b - 2.0 * k * a - p.mu * p.t) / st;
      const double y1 = (2.0 * k * b - (2.0 * k - 1.0) * a - p.mu * p.t) / st;
      tot -= coef * ((2.0 * c + y2) * scaled_npdf(qk, y2) -
                     (2.0 * c + y1) * scaled_npdf(qk, y1) -
                     c2 * scaled_ncdf_diff(qk, y1, y2));
    }
    return tot;
  });
  return sum;
}

namespace detail {

double range_density_series(const AbmParams& p, double r,
                            const SeriesControl& ctl,
                            bool unit_trailing_weight) {
  validate(p);
  if (!(r > 0.0)) return 0.0;
  const double st = p.sigma * std::sqrt(p.t);
  if (r < kMinWidthFactor * st) return 0.0;
  const double rho = r / st;
  const double c = p.mu * std::sqrt(p.t) / p.sigma;
  const double c2 = c * c;
  const double ew = 2.0 * p.mu * r / (p.sigma * p.sigma);  // = 2*c*rho
  const double trailing = unit_trailing_weight ? 1.0 : 0.5 * c;

  const double sum = sum_levels(ctl, [&](int k) {
    const double k2g = (2.0 * k + 2.0) * rho;
    const double k1g = (2.0 * k + 1.0) * rho;
    const double k0g = 2.0 * k * rho;
    const double km1g = (2.0 * k - 1.0) * rho;
    double tot = 0.0;
    if (k != 0) {
      // Phi weights differ by c^2*(K1 - 2K0 + K-1) = 0 across the triple, so
      // they reduce to two adjacent differences.
      const double w1 = c2 * k1g - 2.0 * c - c2 * c;
      const double wm1 = c2 * km1g - 2.0 * c - c2 * c;
      const double ik =
          (1.0 + c2) * (scaled_npdf(-k * ew, k1g - c) -
                        2.0 * scaled_npdf(-k * ew, k0g - c) +
                        scaled_npdf(-k * ew, km1g - c)) +
          w1 * scaled_ncdf_diff(-k * ew, k0g - c, k1g - c) -
          wm1 * scaled_ncdf_diff(-k * ew, km1g - c, k0g - c);
      tot += 4.0 * k * k * ik;
    }
    if (k != 0 && k != -1) {
      const double jk =
          scaled_npdf(k * ew, k1g + c) - scaled_npdf(k * ew, k0g + c) -
          (scaled_npdf((k + 1.0) * ew, k2g + c) -
           scaled_npdf((k + 1.0) * ew, k1g + c)) -
          0.5 * c * scaled_ncdf_diff(-k * ew, k0g - c, k1g - c) +
          0.5 * c * scaled_ncdf_diff(-(k + 1.0) * ew, k1g - c, k2g - c) +
          trailing * scaled_ncdf_diff(k * ew, k0g + c, k1g + c) -
          trailing * scaled_ncdf_diff((k + 1.0) * ew, k1g + c, k2g + c);
      tot += 4.0 * k * (k + 1.0) * jk;
    }
    return tot;
  });
  return sum / st;
}

}  // namespace detail

double range_density(const AbmParams& p, double r, const SeriesControl& ctl) {
  return detail::range_density_series(p, r, ctl, /*unit_trailing_weight=*/false);
}

double range_density_quadrature(const AbmParams& p, double r,
                                const SeriesControl& ctl) {
  validate(p);
  if (!(r > 0.0)) return 0.0;
  const double st = p.sigma * std::sqrt(p.t);
  if (r < kMinWidthFactor * st) return 0.0;
  return integrate(
      [&](double u) {
        if (u <= 0.0 || u >= r) return 0.0;
        return joint_density_max_min(p, u - r, u, ctl);
      },
      0.0, r, 1e-10);
}

}  // namespace rangevol
