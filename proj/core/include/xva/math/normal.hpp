#pragma once

#include <cmath>

namespace xva::math {

inline constexpr double sqrt_two = 1.4142135623730950488;
inline constexpr double inv_sqrt_2pi = 0.3989422804014326779;

inline double norm_pdf(double x) {
    return inv_sqrt_2pi * std::exp(-0.5 * x * x);
}

inline double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / sqrt_two);
}

// Inverse standard normal CDF: Acklam's rational approximation refined by one
// Halley step, good to full double precision over (0,1).
double norm_quantile(double p);

// Bivariate standard normal CDF P(X<=x, Y<=y) with correlation rho, Genz (2004)
// hybrid quadrature (the double-precision variant).
double binorm_cdf(double x, double y, double rho);

} // namespace xva::math
