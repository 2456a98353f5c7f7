#include "xva/credit/default_sample.hpp"

#include "xva/math/normal.hpp"

namespace xva::credit {

namespace {

void fill_name(const curves::HazardCurve& curve, double maturity, double u, int i,
               DefaultSample& s) {
    XVA_REQUIRE(u > 0.0 && u < 1.0, "sample_default: uniform draw " << u << " outside (0,1)");
    const double eps = -std::log1p(-u); // -log(1-u)
    s.trigger[i] = eps;
    s.grade[i] = u;
    if (eps <= curve.cumulative(maturity)) {
        s.defaulted[i] = true;
        s.tau[i] = curve.inverse_cumulative(eps);
    } else {
        s.defaulted[i] = false;
        s.tau[i] = 0.0;
    }
}

} // namespace

DefaultSample sample_default(const curves::HazardCurve& curve, double maturity, double u) {
    DefaultSample s;
    s.n_names = 1;
    fill_name(curve, maturity, u, 0, s);
    return s;
}

DefaultSample sample_default_pair(const curves::HazardCurve& c1, const curves::HazardCurve& c2,
                                  double maturity, const GaussianCopula2& copula, double z1,
                                  double z2) {
    DefaultSample s;
    s.n_names = 2;
    const double y1 = z1;
    const double y2 = copula.rho * z1 + std::sqrt(1.0 - copula.rho * copula.rho) * z2;
    fill_name(c1, maturity, math::norm_cdf(y1), 0, s);
    fill_name(c2, maturity, math::norm_cdf(y2), 1, s);
    return s;
}

} // namespace xva::credit
