#pragma once

// European call valuation under constant volatility.

#include "rangevol/errors.hpp"

namespace rangevol {

struct PricingInputs {
  double spot = 0.0;    // S_t > 0
  double strike = 0.0;  // K > 0
  double rate = 0.0;    // continuously compounded, per year
  double vol = 0.0;     // annualized, > 0
  double tau = 0.0;     // years to expiry, >= 0
};

void validate(const PricingInputs& in);

// C = S*Phi(d1) - K*exp(-r*tau)*Phi(d2). When vol*sqrt(tau) < 1e-12 (expiry
// or vanishing variance) returns the discounted intrinsic limit
// max(S - K*exp(-r*tau), 0).
double bs_call(const PricingInputs& in);

}  // namespace rangevol
