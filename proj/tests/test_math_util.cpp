#include <doctest.h>

#include <cmath>

#include "rangevol/math_util.hpp"

using namespace rangevol;

TEST_CASE("norm_cdf matches reference points") {
  CHECK(norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(norm_cdf(1.0) == doctest::Approx(0.841344746068543).epsilon(1e-14));
  CHECK(norm_cdf(-8.0) == doctest::Approx(6.22096057427178e-16).epsilon(1e-12));
  CHECK(norm_cdf(8.0) + norm_cdf(-8.0) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("log_norm_cdf is continuous across the asymptotic switch") {
  // switch sits at z = -36
  const double a = log_norm_cdf(-35.999999);
  const double b = log_norm_cdf(-36.000001);
  CHECK(std::abs(a - b) < 1e-6 * std::abs(a));
  CHECK(log_norm_cdf(0.0) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
  CHECK(std::isfinite(log_norm_cdf(-200.0)));
}

TEST_CASE("scaled products agree with naive evaluation in the safe zone") {
  CHECK(scaled_npdf(0.3, 1.1) ==
        doctest::Approx(std::exp(0.3) * norm_pdf(1.1)).epsilon(1e-14));
  CHECK(scaled_ncdf(0.7, -0.4) ==
        doctest::Approx(std::exp(0.7) * norm_cdf(-0.4)).epsilon(1e-14));
  CHECK(scaled_ncdf_diff(0.5, -1.0, 2.0) ==
        doctest::Approx(std::exp(0.5) * (norm_cdf(2.0) - norm_cdf(-1.0)))
            .epsilon(1e-13));
  // both arguments deep in one tail
  CHECK(scaled_ncdf_diff(0.0, 5.0, 6.0) ==
        doctest::Approx(norm_cdf(6.0) - norm_cdf(5.0)).epsilon(1e-12));
  CHECK(scaled_ncdf_diff(0.0, -6.0, -5.0) ==
        doctest::Approx(norm_cdf(-5.0) - norm_cdf(-6.0)).epsilon(1e-12));
}

TEST_CASE("scaled products stay finite where naive evaluation overflows") {
  // exp(1000) alone overflows; paired with a far tail it must not.
  const double v = scaled_ncdf_diff(1000.0, -60.0, -59.0);
  CHECK(std::isfinite(v));
  CHECK(v >= 0.0);
  CHECK(scaled_npdf(1000.0, 60.0) == 0.0);
  CHECK(scaled_ncdf_diff(-2000.0, -1.0, 1.0) == 0.0);
  CHECK(scaled_ncdf_diff(3.0, 0.0, 1e-14) >= 0.0);
}
