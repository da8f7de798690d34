#pragma once

// Normal distribution helpers and log-scaled products used by the series
// evaluators. The scaled forms exist because the reflection series pair huge
// exponential prefactors with tiny Gaussian tails; evaluating exp(p)*phi(z)
// or exp(p)*(Phi(z2)-Phi(z1)) naively overflows long before the product
// stops being representable.

#include <cmath>

namespace rangevol {

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kSqrt2Pi = 2.506628274631000502415765284811045253;
inline constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934381868;
inline constexpr double kInvSqrt2 = 0.707106781186547524400844362104849039;

// exp() underflows to zero a little below this.
inline constexpr double kLogTiny = -745.0;

inline double norm_pdf(double z) { return kInvSqrt2Pi * std::exp(-0.5 * z * z); }

// Phi via the complementary error function keeps full relative accuracy in
// both tails (|x| <= 8 and far beyond).
inline double norm_cdf(double z) { return 0.5 * std::erfc(-z * kInvSqrt2); }

// log Phi(z), valid for any z. Below the erfc underflow point the standard
// asymptotic tail expansion takes over.
inline double log_norm_cdf(double z) {
  if (z > -36.0) {
    return std::log(0.5 * std::erfc(-z * kInvSqrt2));
  }
  const double z2 = z * z;
  const double corr = 1.0 - 1.0 / z2 + 3.0 / (z2 * z2) - 15.0 / (z2 * z2 * z2);
  return -0.5 * z2 - std::log(-z) - std::log(kSqrt2Pi) + std::log(corr);
}

// exp(p) * phi(z) without intermediate overflow/underflow.
inline double scaled_npdf(double p, double z) {
  const double e = p - 0.5 * z * z;
  return e < kLogTiny ? 0.0 : kInvSqrt2Pi * std::exp(e);
}

// exp(p) * Phi(z) without intermediate overflow/underflow.
inline double scaled_ncdf(double p, double z) {
  const double e = p + log_norm_cdf(z);
  return e < kLogTiny ? 0.0 : std::exp(e);
}

// exp(p) * (Phi(z2) - Phi(z1)) for z2 >= z1, stable for any p and both tails.
// The difference is formed from the smaller tail so it never cancels.
inline double scaled_ncdf_diff(double p, double z1, double z2) {
  double lbig, lsmall;
  if (z1 + z2 >= 0.0) {
    lbig = log_norm_cdf(-z1);  // upper-tail masses
    lsmall = log_norm_cdf(-z2);
  } else {
    lbig = log_norm_cdf(z2);  // lower-tail masses
    lsmall = log_norm_cdf(z1);
  }
  const double e = p + lbig;
  if (e < kLogTiny) return 0.0;
  return std::exp(e) * (-std::expm1(lsmall - lbig));
}

}  // namespace rangevol
