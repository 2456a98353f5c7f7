#pragma once

#include "xva/ad/scalar.hpp"
#include "xva/curves/zero_curve.hpp"

#include <cmath>
#include <span>

namespace xva::hw {

// One-factor Hull-White fitted to the zero curve by construction. The short
// rate is x(t) + alpha(t) with dx = -kappa x dt + sigma dW, x(0) = 0; the
// deterministic shift never appears explicitly, bonds only touch D(0,.) and
// the variance terms below, which keeps rate-pillar tapes small.
struct HullWhiteModel {
    double kappa;
    double sigma;
    curves::ZeroCurve curve;
};

namespace detail {

inline double ou_decay(double kappa, double dt) { return std::exp(-kappa * dt); }
inline double ou_b(double kappa, double dt) { return (1.0 - std::exp(-kappa * dt)) / kappa; }
inline double ou_w(double kappa, double dt) {
    return (1.0 - std::exp(-2.0 * kappa * dt)) / (2.0 * kappa);
}
// Var(int_0^dt x) / sigma^2
inline double ou_vint(double kappa, double dt) {
    return (dt - 2.0 * ou_b(kappa, dt) + ou_w(kappa, dt)) / (kappa * kappa);
}

} // namespace detail

// Exact joint law of (x(t+dt), int_t^{t+dt} x ds) given x(t), mapped from two
// independent standard normals.
struct StepLaw {
    double dt;
    double decay;  // e^{-kappa dt}
    double b;      // B(dt)
    double sx;     // stdev of the factor innovation
    double ai, bi; // integral innovation = ai z1 + bi z2

    static StepLaw make(double kappa, double sigma, double dt) {
        StepLaw s;
        s.dt = dt;
        s.decay = detail::ou_decay(kappa, dt);
        s.b = detail::ou_b(kappa, dt);
        const double var_x = sigma * sigma * detail::ou_w(kappa, dt);
        const double var_i = sigma * sigma * detail::ou_vint(kappa, dt);
        const double cov = 0.5 * sigma * sigma * s.b * s.b;
        s.sx = std::sqrt(var_x);
        s.ai = s.sx > 0.0 ? cov / s.sx : 0.0;
        s.bi = std::sqrt(std::max(var_i - s.ai * s.ai, 0.0));
        return s;
    }

    void advance(double z1, double z2, double& x, double& dj) const {
        dj = x * b + ai * z1 + bi * z2;
        x = x * decay + sx * z1;
    }
};

// Conditioning data for values inside a grid step [a,b]: inverse of the
// covariance of (x_b, J) given x_a, scaled by 1/sigma^2.
struct StepBridge {
    double a, b;
    double i11, i12, i22; // inverse covariance entries
    double decay, bfull;  // e^{-kappa (b-a)}, B(b-a)

    static StepBridge make(double kappa, double sigma, double a, double b) {
        StepBridge sb;
        sb.a = a;
        sb.b = b;
        const double dt = b - a;
        sb.decay = detail::ou_decay(kappa, dt);
        sb.bfull = detail::ou_b(kappa, dt);
        const double w = detail::ou_w(kappa, dt);
        const double vi = detail::ou_vint(kappa, dt);
        const double c = 0.5 * sb.bfull * sb.bfull;
        const double det = (w * vi - c * c) * sigma * sigma * sigma * sigma;
        if (det > 0.0) {
            const double s2 = sigma * sigma;
            sb.i11 = vi * s2 / det;
            sb.i12 = -c * s2 / det;
            sb.i22 = w * s2 / det;
        } else { // degenerate step (sigma = 0 or dt = 0): condition on nothing
            sb.i11 = sb.i12 = sb.i22 = 0.0;
        }
        return sb;
    }
};

// ou_vint with a generic scalar time (taped default times).
template <class S>
S ou_vint_s(double kappa, const S& t) {
    using std::exp;
    const auto et = exp(t * (-kappa));
    const auto b = (1.0 - et) / kappa;
    const auto w = (1.0 - et * et) / (2.0 * kappa);
    return (t - 2.0 * b + w) / (kappa * kappa);
}

// Conditional means of the factor and of its running integral at s in [a,b],
// given the simulated step endpoints (x_a, x_b) and the step integral J.
// Reproduces the endpoints exactly at s = a and s = b, so swap values built on
// it jump only by paid cash amounts across payment dates.
template <class S>
struct BridgeValues {
    S x;        // E[x(s) | x_a, x_b, J]
    S integral; // E[int_a^s x du | x_a, x_b, J]
};

template <class S>
BridgeValues<S> bridge_at(double kappa, double sigma, const StepBridge& sb, const S& s,
                          const S& x_a, const S& x_b, const S& j_step) {
    using std::exp;
    const double s2 = sigma * sigma;
    const auto es = exp((sb.a - s) * kappa);  // e^{-kappa (s-a)}
    const auto er = exp((s - sb.b) * kappa);  // e^{-kappa (b-s)}
    const auto bs = (1.0 - es) / kappa;
    const auto br = (1.0 - er) / kappa;
    const auto ws = (1.0 - es * es) / (2.0 * kappa);
    const auto vs = ou_vint_s(kappa, s - sb.a);

    // covariances with (x_b, J), scaled by sigma^2
    const auto c_x_1 = er * ws * s2;
    const auto c_x_2 = (0.5 * bs * bs + br * ws) * s2;
    const auto c_i_1 = er * 0.5 * bs * bs * s2;
    const auto c_i_2 = (vs + br * 0.5 * bs * bs) * s2;

    const auto r1 = x_b - x_a * sb.decay;
    const auto r2 = j_step - x_a * sb.bfull;
    const auto k1 = sb.i11 * r1 + sb.i12 * r2;
    const auto k2 = sb.i12 * r1 + sb.i22 * r2;

    BridgeValues<S> out;
    out.x = x_a * es + c_x_1 * k1 + c_x_2 * k2;
    out.integral = x_a * bs + c_i_1 * k1 + c_i_2 * k2;
    return out;
}

// log P(t,T) = log D(0,T) - log D(0,t) + vol terms - B(t,T) x_t, with the
// curve dependence isolated in the two log-discount evaluations.
template <class S>
S bond_log_price(double kappa, double sigma, std::span<const double> curve_times,
                 std::span<const S> zeros, const S& t, double maturity, const S& x_t) {
    using std::exp;
    const auto em = exp((t - maturity) * kappa); // e^{-kappa (T-t)}
    const auto bt = (1.0 - em) / kappa;
    const auto et = exp(t * (-kappa));
    const auto one_m = 1.0 - et;
    const auto vol = (sigma * sigma / (2.0 * kappa * kappa)) * one_m * one_m * bt +
                     (sigma * sigma / (4.0 * kappa)) * (1.0 - et * et) * bt * bt;
    return curves::log_discount_at(curve_times, zeros, maturity) -
           curves::log_discount_at_t(curve_times, zeros, t) - vol - bt * x_t;
}

// int_s^e alpha(u) du, the deterministic part of the compounding factor over
// a partial period [s, e].
template <class S>
S alpha_integral(double kappa, double sigma, std::span<const double> curve_times,
                 std::span<const S> zeros, const S& s, double e) {
    const double s2 = sigma * sigma;
    const auto vs = ou_vint_s(kappa, s) * s2;
    const double ve = s2 * detail::ou_vint(kappa, e);
    return curves::log_discount_at_t(curve_times, zeros, s) -
           curves::log_discount_at(curve_times, zeros, e) + 0.5 * (ve - vs);
}

} // namespace xva::hw
