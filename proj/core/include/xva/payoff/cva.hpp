#pragma once

#include "xva/credit/default_sample.hpp"
#include "xva/hw/swap.hpp"

#include <vector>

namespace xva::payoff {

enum class CvaMode { unilateral, bilateral };

// The shipped integrand discounts the loss with the deterministic curve
// discount D(0,tau); the pathwise variant uses exp(-int_0^tau r) instead,
// which is what reprices the published base value (see README).
enum class Discounting { curve, pathwise };

// Discounted default loss integrand: -lgd D(0,tau) (NPV_tau)^+ on the default
// indicator.
struct CvaPayoff {
    double lgd = 0.6;
    double maturity = 10.0;
    CvaMode mode = CvaMode::unilateral;
    Discounting discounting = Discounting::curve;

    // Indicator of the loss event (counterparty is name 1).
    bool triggered(const credit::DefaultSample& s) const {
        if (!s.defaulted[0] || s.tau[0] > maturity) return false;
        if (mode == CvaMode::unilateral) return true;
        return !s.defaulted[1] || s.tau[0] <= s.tau[1];
    }
};

// Loss value given the trigger fired; tau is the counterparty default time.
template <class S>
S cva_loss(const CvaPayoff& payoff, const hw::PricingContext<S>& ctx, const S& tau) {
    using std::exp;
    const S d = payoff.discounting == Discounting::curve ? ctx.discount(tau)
                                                         : ctx.stochastic_discount(tau);
    const S exposure = ad::max0(ctx.npv(tau));
    return -payoff.lgd * (d * exposure);
}

template <class S>
S evaluate(const CvaPayoff& payoff, const credit::DefaultSample& sample,
           const hw::PricingContext<S>& ctx, const S& tau) {
    if (!payoff.triggered(sample)) return ctx.x[0] * 0.0;
    return cva_loss(payoff, ctx, tau);
}

// Payoff jumps at the payment dates (unilateral estimator input):
// delta_i = -lgd D(0,T_i) [ (NPV_{T_i+})^+ - (NPV_{T_i-})^+ ].
std::vector<double> jumps_at(const CvaPayoff& payoff, const hw::PricingContext<double>& ctx);

} // namespace xva::payoff
