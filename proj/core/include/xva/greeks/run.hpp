#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace xva::greeks {

inline constexpr double z_98 = 2.3263; // 98% two-sided normal quantile

struct RunConfig {
    std::uint64_t n_paths = 100000;
    std::uint64_t seed = 1;
    int workers = 0; // 0 = hardware concurrency
    std::size_t per_path_cap = std::size_t(1) << 24; // stored values, not bytes
};

using PathFn = std::function<void(std::uint64_t path, std::span<double> out)>;
// Called once per worker thread so each worker owns its tapes and buffers.
using PathFnFactory = std::function<PathFn()>;

class EstimatorRun;
EstimatorRun run_mc(const RunConfig& cfg, std::vector<std::string> labels,
                    const PathFnFactory& factory);

// Per-coordinate Monte Carlo statistics of one estimator run. Sums are block
// pairwise reductions in path order, so results are bit-identical for any
// worker count; per-path contributions are kept when they fit under the cap.
class EstimatorRun {
  public:
    EstimatorRun() = default;

    std::size_t n_coords() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    std::uint64_t n_paths() const { return n_paths_; }
    std::uint64_t seed() const { return seed_; }

    double mean(std::size_t c) const { return mean_[c]; }
    double variance(std::size_t c) const { return var_[c]; }
    double std_error(std::size_t c) const;
    double half_ci98(std::size_t c) const;
    // wall time times the Monte Carlo variance of the estimate (var/n), the
    // path-count-invariant cost of unit accuracy
    double efficiency(std::size_t c) const {
        return wall_time_s_ * var_[c] / double(n_paths_);
    }

    double wall_time_s() const { return wall_time_s_; }
    void set_wall_time(double t) { wall_time_s_ = t; }

    bool has_per_path() const { return !per_path_.empty(); }
    double per_path(std::uint64_t path, std::size_t c) const {
        return per_path_[path * n_coords() + c];
    }
    // Recomputes (mean, variance) of a coordinate from the stored per-path
    // values with the same block-pairwise reduction; must match bit for bit.
    std::pair<double, double> recompute_stats(std::size_t c) const;

    std::size_t index_of(const std::string& label) const;

  private:
    friend EstimatorRun run_mc(const RunConfig&, std::vector<std::string>,
                               const PathFnFactory&);
    std::vector<std::string> labels_;
    std::vector<double> mean_, var_;
    std::vector<double> per_path_;
    std::uint64_t n_paths_ = 0;
    std::uint64_t seed_ = 0;
    double wall_time_s_ = 0.0;
};

} // namespace xva::greeks
