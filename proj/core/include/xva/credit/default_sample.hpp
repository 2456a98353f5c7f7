#pragma once

#include "xva/common/require.hpp"
#include "xva/curves/hazard_curve.hpp"

#include <array>
#include <cmath>

namespace xva::credit {

// Censored default times for up to two names. Triggers and grades are always
// retained in full (survivors keep their sampled grade, only the exact time
// past maturity is unknown).
struct DefaultSample {
    int n_names = 1;
    std::array<double, 2> trigger{};   // unit-exponential draws
    std::array<double, 2> grade{};     // u = 1 - e^{-trigger}, in (0,1)
    std::array<double, 2> tau{};       // valid only where defaulted
    std::array<bool, 2> defaulted{};   // trigger <= Lambda(maturity)

    unsigned region() const { // bitmask of defaulted names
        unsigned m = 0;
        for (int i = 0; i < n_names; ++i)
            if (defaulted[i]) m |= 1u << i;
        return m;
    }
};

struct GaussianCopula2 {
    double rho;
    explicit GaussianCopula2(double rho_) : rho(rho_) {
        XVA_REQUIRE(std::fabs(rho) < 1.0, "gaussian copula: |rho| = " << std::fabs(rho)
                                                                      << " must be < 1");
    }
};

// Single name from one uniform draw; defaults iff the trigger is within the
// censoring horizon (boundary included).
DefaultSample sample_default(const curves::HazardCurve& curve, double maturity, double u);

// Two names from independent standard normal draws coupled by the copula.
DefaultSample sample_default_pair(const curves::HazardCurve& c1, const curves::HazardCurve& c2,
                                  double maturity, const GaussianCopula2& copula, double z1,
                                  double z2);

} // namespace xva::credit
