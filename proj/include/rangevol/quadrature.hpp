#pragma once

// Thin wrapper around Boost.Math adaptive Gauss-Kronrod. All integrals in
// this library live on finite windows chosen so that the discarded tails are
// below 1e-12; callers pass those windows explicitly.

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace rangevol {

inline constexpr double kQuadTol = 1e-9;

template <class F>
double integrate(F&& f, double lo, double hi, double tol = kQuadTol,
                 unsigned max_depth = 15) {
  if (!(hi > lo)) return 0.0;
  return boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
      std::forward<F>(f), lo, hi, max_depth, tol);
}

}  // namespace rangevol
