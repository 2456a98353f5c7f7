#include "xva/math/normal.hpp"

#include "xva/common/require.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace xva::math {

namespace {

constexpr double a_[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                         -2.759285104469687e+02, 1.383577518672690e+02,
                         -3.066479806614716e+01, 2.506628277459239e+00};
constexpr double b_[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                         -1.556989798598866e+02, 6.680131188771972e+01,
                         -1.328068155288572e+01};
constexpr double c_[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                         -2.400758277161838e+00, -2.549732539343734e+00,
                         4.374664141464968e+00,  2.938163982698783e+00};
constexpr double d_[] = {7.784695709041462e-03, 3.224671290700398e-01,
                         2.445134137142996e+00, 3.754408661907416e+00};

double acklam(double p) {
    constexpr double p_low = 0.02425;
    double q, x;
    if (p < p_low) {
        q = std::sqrt(-2.0 * std::log(p));
        x = (((((c_[0] * q + c_[1]) * q + c_[2]) * q + c_[3]) * q + c_[4]) * q + c_[5]) /
            ((((d_[0] * q + d_[1]) * q + d_[2]) * q + d_[3]) * q + 1.0);
    } else if (p <= 1.0 - p_low) {
        q = p - 0.5;
        double r = q * q;
        x = (((((a_[0] * r + a_[1]) * r + a_[2]) * r + a_[3]) * r + a_[4]) * r + a_[5]) * q /
            (((((b_[0] * r + b_[1]) * r + b_[2]) * r + b_[3]) * r + b_[4]) * r + 1.0);
    } else {
        q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c_[0] * q + c_[1]) * q + c_[2]) * q + c_[3]) * q + c_[4]) * q + c_[5]) /
            ((((d_[0] * q + d_[1]) * q + d_[2]) * q + d_[3]) * q + 1.0);
    }
    return x;
}

// Gauss-Legendre abscissae/weights on [-1,1], positive half (nodes used at +-x).
struct GlRule {
    const double* x;
    const double* w;
    int n;
};

constexpr double gl6_x[] = {0.2386191860831969, 0.6612093864662645, 0.9324695142031521};
constexpr double gl6_w[] = {0.4679139345726910, 0.3607615730481386, 0.1713244923791704};

constexpr double gl12_x[] = {0.1252334085114689, 0.3678314989981802, 0.5873179542866175,
                             0.7699026741943047, 0.9041172563704749, 0.9815606342467192};
constexpr double gl12_w[] = {0.2491470458134028, 0.2334925365383548, 0.2031674267230659,
                             0.1600783285433462, 0.1069393259953184, 0.0471753363865118};

constexpr double gl20_x[] = {0.0765265211334973, 0.2277858511416451, 0.3737060887154195,
                             0.5108670019508271, 0.6360536807265150, 0.7463319064601508,
                             0.8391169718222188, 0.9122344282513259, 0.9639719272779138,
                             0.9931285991850949};
constexpr double gl20_w[] = {0.1527533871307258, 0.1491729864726037, 0.1420961093183820,
                             0.1316886384491766, 0.1181945319615184, 0.1019301198172404,
                             0.0832767415767048, 0.0626720483341091, 0.0406014298003869,
                             0.0176140071391521};

GlRule select_rule(double rho) {
    double ar = std::fabs(rho);
    if (ar < 0.3) return {gl6_x, gl6_w, 3};
    if (ar < 0.75) return {gl12_x, gl12_w, 6};
    return {gl20_x, gl20_w, 10};
}

} // namespace

double norm_quantile(double p) {
    XVA_REQUIRE(p > 0.0 && p < 1.0, "norm_quantile: argument " << p << " outside (0,1)");
    double x = acklam(p);
    // One Halley refinement against the erfc-based CDF.
    double e = norm_cdf(x) - p;
    double u = e / norm_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

double binorm_cdf(double x, double y, double rho) {
    XVA_REQUIRE(rho >= -1.0 && rho <= 1.0, "binorm_cdf: correlation " << rho << " outside [-1,1]");
    if (std::isinf(x) || std::isinf(y)) {
        if (x < 0.0 || y < 0.0) return 0.0;
        if (std::isinf(x) && x > 0.0) return std::isinf(y) ? 1.0 : norm_cdf(y);
        return norm_cdf(x);
    }

    const GlRule rule = select_rule(rho);
    double h = -x;
    double k = -y;
    double hk = h * k;
    double bvn = 0.0;

    if (std::fabs(rho) < 0.925) {
        if (std::fabs(rho) > 0.0) {
            double asr = std::asin(rho);
            double hs = 0.5 * (h * h + k * k);
            for (int i = 0; i < rule.n; ++i) {
                for (int s = -1; s <= 1; s += 2) {
                    double sn = std::sin(asr * (1.0 - s * rule.x[i]) * 0.5);
                    bvn += rule.w[i] * std::exp((sn * hk - hs) / (1.0 - sn * sn));
                }
            }
            bvn *= asr * 0.25 / M_PI;
        }
        bvn += norm_cdf(-h) * norm_cdf(-k);
    } else {
        if (rho < 0.0) {
            k = -k;
            hk = -hk;
        }
        if (std::fabs(rho) < 1.0) {
            double as = (1.0 - rho) * (1.0 + rho);
            double a = std::sqrt(as);
            double bs = (h - k) * (h - k);
            double c = (4.0 - hk) / 8.0;
            double d = (12.0 - hk) / 16.0;
            double asr = -(bs / as + hk) / 2.0;
            if (asr > -100.0)
                bvn = a * std::exp(asr) *
                      (1.0 - c * (bs - as) * (1.0 - d * bs / 5.0) / 3.0 + c * d * as * as / 5.0);
            if (-hk < 100.0) {
                double b = std::sqrt(bs);
                bvn -= std::exp(-hk / 2.0) * std::sqrt(2.0 * M_PI) * norm_cdf(-b / a) * b *
                       (1.0 - c * bs * (1.0 - d * bs / 5.0) / 3.0);
            }
            a /= 2.0;
            for (int i = 0; i < rule.n; ++i) {
                for (int s = -1; s <= 1; s += 2) {
                    double xs = a * (1.0 - s * rule.x[i]);
                    xs = xs * xs;
                    double rs = std::sqrt(1.0 - xs);
                    double asr2 = -(bs / xs + hk) / 2.0;
                    if (asr2 > -100.0) {
                        bvn += a * rule.w[i] * std::exp(asr2) *
                               (std::exp(-hk * (1.0 - rs) / (2.0 * (1.0 + rs))) / rs -
                                (1.0 + c * xs * (1.0 + d * xs)));
                    }
                }
            }
            bvn /= -2.0 * M_PI;
        }
        if (rho > 0.0) {
            bvn += norm_cdf(-std::max(h, k));
        } else {
            bvn = -bvn;
            if (k > h) {
                if (h >= 0.0)
                    bvn += norm_cdf(-h) - norm_cdf(-k);
                else
                    bvn += norm_cdf(k) - norm_cdf(h);
            }
        }
    }
    return std::clamp(bvn, 0.0, 1.0);
}

} // namespace xva::math
