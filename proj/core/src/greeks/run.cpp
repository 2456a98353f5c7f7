#include "xva/greeks/run.hpp"

#include "xva/common/require.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <mutex>
#include <thread>

namespace xva::greeks {

namespace {

constexpr std::uint64_t block_size = 4096;

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t h = v.size() / 2;
    return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

} // namespace

double EstimatorRun::std_error(std::size_t c) const {
    return std::sqrt(var_[c] / double(n_paths_));
}

double EstimatorRun::half_ci98(std::size_t c) const { return z_98 * std_error(c); }

std::size_t EstimatorRun::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return i;
    XVA_REQUIRE(false, "estimator run: unknown coordinate '" << label << "'");
    return 0;
}

std::pair<double, double> EstimatorRun::recompute_stats(std::size_t c) const {
    XVA_REQUIRE(has_per_path(), "recompute_stats: per-path values not stored");
    const std::uint64_t n_blocks = (n_paths_ + block_size - 1) / block_size;
    std::vector<double> bsum(n_blocks, 0.0), bsq(n_blocks, 0.0);
    for (std::uint64_t b = 0; b < n_blocks; ++b) {
        const std::uint64_t hi = std::min(n_paths_, (b + 1) * block_size);
        double s = 0.0, q = 0.0;
        for (std::uint64_t p = b * block_size; p < hi; ++p) {
            const double v = per_path(p, c);
            s += v;
            q += v * v;
        }
        bsum[b] = s;
        bsq[b] = q;
    }
    const double s = pairwise_sum(bsum), q = pairwise_sum(bsq);
    const double n = double(n_paths_);
    const double mean = s / n;
    const double var = n > 1 ? std::max(0.0, (q - s * s / n) / (n - 1.0)) : 0.0;
    return {mean, var};
}

EstimatorRun run_mc(const RunConfig& cfg, std::vector<std::string> labels,
                    const PathFnFactory& factory) {
    XVA_REQUIRE(cfg.n_paths >= 1, "run: need at least one path");
    const std::size_t n_coords = labels.size();
    const std::uint64_t n_blocks = (cfg.n_paths + block_size - 1) / block_size;

    EstimatorRun run;
    run.labels_ = std::move(labels);
    run.n_paths_ = cfg.n_paths;
    run.seed_ = cfg.seed;

    const bool store = n_coords * cfg.n_paths <= cfg.per_path_cap;
    if (store) run.per_path_.resize(n_coords * cfg.n_paths);

    std::vector<double> bsum(n_blocks * n_coords, 0.0), bsq(n_blocks * n_coords, 0.0);

    unsigned n_workers = cfg.workers > 0 ? unsigned(cfg.workers)
                                         : std::max(1u, std::thread::hardware_concurrency());
    n_workers = std::min<std::uint64_t>(n_workers, n_blocks);

    const auto t0 = std::chrono::steady_clock::now();
    std::atomic<std::uint64_t> next_block{0};
    std::exception_ptr error;
    std::mutex error_mutex;

    auto work = [&]() {
        try {
            PathFn fn = factory();
            std::vector<double> out(n_coords);
            for (;;) {
                const std::uint64_t b = next_block.fetch_add(1);
                if (b >= n_blocks) break;
                const std::uint64_t lo = b * block_size;
                const std::uint64_t hi = std::min(cfg.n_paths, lo + block_size);
                double* sums = &bsum[b * n_coords];
                double* sqs = &bsq[b * n_coords];
                for (std::uint64_t p = lo; p < hi; ++p) {
                    std::fill(out.begin(), out.end(), 0.0);
                    fn(p, out);
                    for (std::size_t c = 0; c < n_coords; ++c) {
                        sums[c] += out[c];
                        sqs[c] += out[c] * out[c];
                    }
                    if (store)
                        std::copy(out.begin(), out.end(),
                                  run.per_path_.begin() + p * n_coords);
                }
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!error) error = std::current_exception();
        }
    };

    if (n_workers <= 1) {
        work();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(n_workers);
        for (unsigned w = 0; w < n_workers; ++w) threads.emplace_back(work);
        for (auto& t : threads) t.join();
    }
    if (error) std::rethrow_exception(error);

    run.wall_time_s_ =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    run.mean_.resize(n_coords);
    run.var_.resize(n_coords);
    std::vector<double> col(n_blocks);
    const double n = double(cfg.n_paths);
    for (std::size_t c = 0; c < n_coords; ++c) {
        for (std::uint64_t b = 0; b < n_blocks; ++b) col[b] = bsum[b * n_coords + c];
        const double s = pairwise_sum(col);
        for (std::uint64_t b = 0; b < n_blocks; ++b) col[b] = bsq[b * n_coords + c];
        const double q = pairwise_sum(col);
        run.mean_[c] = s / n;
        run.var_[c] = n > 1 ? std::max(0.0, (q - s * s / n) / (n - 1.0)) : 0.0;
    }
    return run;
}

} // namespace xva::greeks
