#include "xva/credit/decomposition.hpp"

#include "xva/common/require.hpp"

#include <bit>

namespace xva::credit {

namespace {

std::string subset_name(unsigned mask) {
    std::string s = "{";
    for (int i = 0; i < 3; ++i)
        if (mask & (1u << i)) {
            if (s.size() > 1) s += ",";
            s += std::to_string(i + 1);
        }
    return s + "}";
}

} // namespace

std::vector<double> decompose_payoff(std::span<const double> f_by_subset, int n_names) {
    XVA_REQUIRE(n_names >= 1 && n_names <= 3, "decompose_payoff: " << n_names
                                                                   << " names outside [1,3]");
    const std::size_t want = std::size_t(1) << n_names;
    XVA_REQUIRE(f_by_subset.size() >= want,
                "decompose_payoff: missing evaluation for subset "
                    << subset_name(static_cast<unsigned>(f_by_subset.size())));
    XVA_REQUIRE(f_by_subset.size() == want,
                "decompose_payoff: " << f_by_subset.size() << " values for " << want
                                     << " subsets");
    std::vector<double> addends(want, 0.0);
    for (unsigned mask = 0; mask < want; ++mask) {
        double a = 0.0;
        unsigned sub = mask;
        while (true) { // iterate all J subset of mask, including empty
            const int sign = (std::popcount(mask ^ sub) % 2 == 0) ? 1 : -1;
            a += sign * f_by_subset[sub];
            if (sub == 0) break;
            sub = (sub - 1) & mask;
        }
        addends[mask] = a;
    }
    return addends;
}

double reconstruct_on_region(std::span<const double> addends, unsigned region) {
    XVA_REQUIRE(region < addends.size(), "reconstruct_on_region: region out of range");
    double f = 0.0;
    unsigned sub = region;
    while (true) {
        f += addends[sub];
        if (sub == 0) break;
        sub = (sub - 1) & region;
    }
    return f;
}

} // namespace xva::credit
