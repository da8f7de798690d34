#include "rangevol/pricing.hpp"

#include <algorithm>
#include <cmath>

#include "rangevol/math_util.hpp"

namespace rangevol {

void validate(const PricingInputs& in) {
  if (!(in.spot > 0.0) || !std::isfinite(in.spot))
    throw ParamError("pricing: spot must be > 0");
  if (!(in.strike > 0.0) || !std::isfinite(in.strike))
    throw ParamError("pricing: strike must be > 0");
  if (!(in.vol > 0.0) || !std::isfinite(in.vol))
    throw ParamError("pricing: vol must be > 0");
  if (!(in.tau >= 0.0) || !std::isfinite(in.tau))
    throw ParamError("pricing: tau must be >= 0");
  if (!std::isfinite(in.rate)) throw ParamError("pricing: rate must be finite");
}

double bs_call(const PricingInputs& in) {
  validate(in);
  const double vol_sqt = in.vol * std::sqrt(in.tau);
  const double disc = std::exp(-in.rate * in.tau);
  if (vol_sqt < 1e-12) return std::max(in.spot - in.strike * disc, 0.0);
  const double d1 =
      (std::log(in.spot / in.strike) + (in.rate + 0.5 * in.vol * in.vol) * in.tau) /
      vol_sqt;
  const double d2 = d1 - vol_sqt;
  return in.spot * norm_cdf(d1) - in.strike * disc * norm_cdf(d2);
}

}  // namespace rangevol
