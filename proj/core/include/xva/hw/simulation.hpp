#pragma once

#include "xva/hw/model.hpp"
#include "xva/rng/philox.hpp"

#include <vector>

namespace xva::hw {

// Batch container for simulated paths on a fixed grid: one row per path of
// the factor and of the per-step integral increments.
struct RateGrid {
    std::vector<double> times; // t_0 = 0 < ... < t_n
    std::size_t n_paths = 0;
    std::vector<double> x;      // (n_paths) x (times.size())
    std::vector<double> j_step; // (n_paths) x (times.size()-1)

    double factor(std::size_t path, std::size_t k) const { return x[path * times.size() + k]; }
    double step_integral(std::size_t path, std::size_t k) const {
        return j_step[path * (times.size() - 1) + k];
    }
};

// Exact-transition scheme on a grid; two draws per step.
class GridScheme {
  public:
    GridScheme(const HullWhiteModel& model, std::vector<double> grid_times);

    const std::vector<double>& times() const { return times_; }
    std::span<const StepLaw> steps() const { return steps_; }
    std::span<const StepBridge> bridges() const { return bridges_; }
    std::size_t n_steps() const { return steps_.size(); }

    // Fills x (size n_steps+1, x[0]=0) and dj (size n_steps).
    void sample_path(rng::PathRng& rng, std::span<double> x, std::span<double> dj) const;

  private:
    std::vector<double> times_;
    std::vector<StepLaw> steps_;
    std::vector<StepBridge> bridges_;
};

RateGrid simulate_paths(const HullWhiteModel& model, std::vector<double> grid_times,
                        std::size_t n_paths, std::uint64_t seed);

} // namespace xva::hw
