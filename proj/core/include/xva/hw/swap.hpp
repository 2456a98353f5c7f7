#pragma once

#include "xva/common/require.hpp"
#include "xva/hw/model.hpp"

#include <utility>
#include <vector>

namespace xva::hw {

// Annual-pay OIS: receives fixed K against the compounded overnight rate,
// unit year fractions, payments at multiples of `period` out to maturity.
struct SwapSpec {
    double notional = 1e8;
    double fixed_rate = 0.00947;
    int n_periods = 10;
    double period = 1.0;
    bool receive_fixed = true;

    double maturity() const { return n_periods * period; }
    double payment_date(int k) const { return (k + 1) * period; } // k = 0..n-1
};

// int_a^t alpha(u) du with a plain period start and a scalar end.
template <class S>
S alpha_integral_from(double kappa, double sigma, std::span<const double> curve_times,
                      std::span<const S> zeros, double a, const S& t) {
    const double s2 = sigma * sigma;
    const auto vt = ou_vint_s(kappa, t) * s2;
    const double va = s2 * detail::ou_vint(kappa, a);
    return curves::log_discount_at(curve_times, zeros, a) -
           curves::log_discount_at_t(curve_times, zeros, t) + 0.5 * (vt - va);
}

// Values the swap along one path. Scalar type S is double for plain pricing
// and Active while a tape is recording; the state arrays live on the caller.
// The simulation grid refines the payment schedule: grid[pay_idx[k]] is the
// k-th payment date, x[i] is the factor at grid[i] and j_prefix[i] the
// integrated factor from 0 to grid[i] (j_prefix[0] = 0).
template <class S>
struct PricingContext {
    double kappa = 0;
    double sigma = 0;
    const SwapSpec* swap = nullptr;
    std::span<const double> curve_times;
    std::span<const double> grid;          // fine grid, grid[0] = 0
    std::span<const std::size_t> pay_idx;  // one entry per payment date
    std::span<const StepBridge> bridges;   // one per fine interval
    std::span<const S> zeros;              // rate pillars (the psi variables)
    std::span<const S> x;
    std::span<const S> j_prefix;

    S discount(const S& t) const {
        using std::exp;
        return exp(curves::log_discount_at_t(curve_times, zeros, t));
    }

    // exp(-int_0^t r du) along the path, bridged inside the fine interval
    S stochastic_discount(const S& t) const {
        using std::exp;
        const std::size_t i = curves::segment_index(grid, ad::value_of(t));
        const auto br =
            bridge_at(kappa, sigma, bridges[i], t, x[i], x[i + 1], j_prefix[i + 1] - j_prefix[i]);
        const auto j_t = j_prefix[i] + br.integral;
        const auto v_t = ou_vint_s(kappa, t) * (sigma * sigma);
        return exp(curves::log_discount_at_t(curve_times, zeros, t) - j_t - 0.5 * v_t);
    }

    S bond(const S& t, double maturity, const S& x_t) const {
        using std::exp;
        return exp(bond_log_price(kappa, sigma, curve_times, zeros, t, maturity, x_t));
    }

    // Remaining-flow NPV at t, right-continuous at payment dates: the flow at
    // t itself is excluded and the running period is valued off its accrual.
    S npv(const S& t) const {
        const int n = swap->n_periods;
        const double tv = ad::value_of(t);
        XVA_REQUIRE(tv >= 0.0 && tv <= swap->maturity() + 1e-12,
                    "swap npv: time " << tv << " outside [0, maturity]");
        int j = 0;
        while (j < n && swap->payment_date(j) <= tv) ++j;
        if (j >= n) return x[0] * 0.0; // nothing left to pay
        // fine interval containing t
        std::size_t i = curves::segment_index(grid, tv);
        const auto br = bridge_at(kappa, sigma, bridges[i], t, x[i], x[i + 1],
                                  j_prefix[i + 1] - j_prefix[i]);
        const std::size_t start = (j == 0) ? 0 : pay_idx[j - 1];
        const auto xi = (j_prefix[i] - j_prefix[start]) + br.integral;
        return npv_core(j, t, br.x, xi);
    }

    // NPV just before/after payment date k from the simulated grid states.
    std::pair<S, S> npv_sides(int k) const {
        const int n = swap->n_periods;
        XVA_REQUIRE(k >= 0 && k < n, "swap npv_sides: payment index " << k << " out of range");
        const std::size_t idx = pay_idx[k];
        const std::size_t start = (k == 0) ? 0 : pay_idx[k - 1];
        const S t = x[0] * 0.0 + swap->payment_date(k);
        const S minus = npv_core(k, t, x[idx], j_prefix[idx] - j_prefix[start]);
        S plus = x[0] * 0.0;
        if (k + 1 < n) plus = npv_core(k + 1, t, x[idx], x[0] * 0.0);
        return {minus, plus};
    }

  private:
    // Value at t in payment period j; xi is the accrued integral of the
    // factor from the period start g_j up to t.
    S npv_core(int j, const S& t, const S& x_t, const S& xi) const {
        using std::exp;
        const int n = swap->n_periods;
        const double g_j = (j == 0) ? 0.0 : swap->payment_date(j - 1);
        const auto accrual =
            exp(xi + alpha_integral_from(kappa, sigma, curve_times, zeros, g_j, t));

        // hoisted bond basis: log P(t,T) = logD(0,T) - ld_t - c1 m^2 b - c2 w b^2 - b x
        const auto ld_t = curves::log_discount_at_t(curve_times, zeros, t);
        const auto et = exp(t * (-kappa)); // e^{-kappa t}
        const auto inv_et = 1.0 / et;
        const auto m1 = 1.0 - et;
        const auto w2 = 1.0 - et * et;
        const double c1 = sigma * sigma / (2.0 * kappa * kappa);
        const double c2 = sigma * sigma / (4.0 * kappa);

        auto bond_to = [&](double maturity) {
            const auto bt = (1.0 - inv_et * std::exp(-kappa * maturity)) / kappa;
            return exp(curves::log_discount_at(curve_times, zeros, maturity) - ld_t -
                       c1 * (m1 * m1) * bt - c2 * w2 * (bt * bt) - bt * x_t);
        };

        S level = bond_to(swap->payment_date(j));
        S last = (j == n - 1) ? level : level * 0.0;
        for (int k = j + 1; k < n; ++k) {
            const S p = bond_to(swap->payment_date(k));
            level = level + p;
            if (k == n - 1) last = p;
        }
        const auto fixed = level * (swap->fixed_rate * swap->period);
        const auto floating = accrual - last;
        const double sign = swap->receive_fixed ? 1.0 : -1.0;
        return (fixed - floating) * (swap->notional * sign);
    }
};

} // namespace xva::hw
