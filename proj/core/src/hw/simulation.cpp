#include "xva/hw/simulation.hpp"

#include "xva/common/require.hpp"

namespace xva::hw {

GridScheme::GridScheme(const HullWhiteModel& model, std::vector<double> grid_times)
    : times_(std::move(grid_times)) {
    XVA_REQUIRE(times_.size() >= 2 && times_[0] == 0.0, "grid: must start at 0 with >= 1 step");
    for (std::size_t k = 1; k < times_.size(); ++k) {
        XVA_REQUIRE(times_[k] > times_[k - 1], "grid: times not increasing at index " << k);
        steps_.push_back(StepLaw::make(model.kappa, model.sigma, times_[k] - times_[k - 1]));
        bridges_.push_back(StepBridge::make(model.kappa, model.sigma, times_[k - 1], times_[k]));
    }
}

void GridScheme::sample_path(rng::PathRng& rng, std::span<double> x, std::span<double> dj) const {
    double xt = 0.0;
    x[0] = 0.0;
    for (std::size_t k = 0; k < steps_.size(); ++k) {
        const double z1 = rng.next_normal();
        const double z2 = rng.next_normal();
        steps_[k].advance(z1, z2, xt, dj[k]);
        x[k + 1] = xt;
    }
}

RateGrid simulate_paths(const HullWhiteModel& model, std::vector<double> grid_times,
                        std::size_t n_paths, std::uint64_t seed) {
    XVA_REQUIRE(n_paths >= 1, "simulate_paths: need at least one path");
    GridScheme scheme(model, std::move(grid_times));
    RateGrid grid;
    grid.times = scheme.times();
    grid.n_paths = n_paths;
    const std::size_t n = grid.times.size();
    grid.x.resize(n_paths * n);
    grid.j_step.resize(n_paths * (n - 1));
    for (std::size_t p = 0; p < n_paths; ++p) {
        rng::PathRng rng(seed, p);
        scheme.sample_path(rng, std::span<double>(grid.x).subspan(p * n, n),
                           std::span<double>(grid.j_step).subspan(p * (n - 1), n - 1));
    }
    return grid;
}

} // namespace xva::hw
