#include "xva/payoff/cva.hpp"

namespace xva::payoff {

std::vector<double> jumps_at(const CvaPayoff& payoff, const hw::PricingContext<double>& ctx) {
    XVA_REQUIRE(payoff.mode == CvaMode::unilateral,
                "jumps_at: distributional corrections are single-name only");
    const int n = ctx.swap->n_periods;
    std::vector<double> jumps(n, 0.0);
    for (int k = 0; k < n; ++k) {
        const double date = ctx.swap->payment_date(k);
        if (date > payoff.maturity + 1e-12) break;
        const auto [minus, plus] = ctx.npv_sides(k);
        double d;
        if (payoff.discounting == Discounting::curve) {
            d = std::exp(curves::log_discount_at(ctx.curve_times, ctx.zeros, date));
        } else {
            const double j_t = ctx.j_prefix[ctx.pay_idx[k]];
            const double v_t =
                ctx.sigma * ctx.sigma * hw::detail::ou_vint(ctx.kappa, date);
            d = std::exp(curves::log_discount_at(ctx.curve_times, ctx.zeros, date) - j_t -
                         0.5 * v_t);
        }
        jumps[k] = -payoff.lgd * d * (std::max(plus, 0.0) - std::max(minus, 0.0));
    }
    return jumps;
}

} // namespace xva::payoff
