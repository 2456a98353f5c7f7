#include "xva/curves/bootstrap.hpp"

#include "xva/common/require.hpp"

namespace xva::curves {

std::vector<double> spreads_from_hazard(const HazardCurve& curve, double lgd) {
    XVA_REQUIRE(lgd > 0.0 && lgd <= 1.0, "spreads_from_hazard: lgd " << lgd << " outside (0,1]");
    std::vector<double> c(curve.size());
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = curve.zero_intensities()[j] * lgd;
    return c;
}

HazardCurve hazard_from_spreads(std::vector<std::string> labels, std::vector<double> times,
                                std::span<const double> spreads, double lgd) {
    XVA_REQUIRE(lgd > 0.0 && lgd <= 1.0, "hazard_from_spreads: lgd " << lgd << " outside (0,1]");
    std::vector<double> lambda(spreads.size());
    for (std::size_t j = 0; j < spreads.size(); ++j) {
        XVA_REQUIRE(spreads[j] > 0.0,
                    "hazard_from_spreads: spread " << spreads[j] << " at pillar " << j
                                                   << " not positive");
        lambda[j] = spreads[j] / lgd;
    }
    return HazardCurve(std::move(labels), std::move(times), std::move(lambda));
}

std::vector<double> bootstrap_residual(std::span<const double> theta,
                                       std::span<const double> spreads, double lgd) {
    XVA_REQUIRE(theta.size() == spreads.size(), "bootstrap_residual: theta size "
                                                    << theta.size() << " != spread size "
                                                    << spreads.size());
    std::vector<double> b(theta.size());
    for (std::size_t j = 0; j < b.size(); ++j) b[j] = theta[j] * lgd - spreads[j];
    return b;
}

} // namespace xva::curves
