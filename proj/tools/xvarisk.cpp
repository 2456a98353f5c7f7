#include "xva/harness/runner.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"CVA pricing and first/second order credit-rate sensitivities"};

    std::string config_path, estimator, out_dir, timing;
    std::vector<double> bump_bp;
    std::uint64_t paths = 0, seed = 0;
    int workers = -1;
    bool have_seed = false;

    app.add_option("--config", config_path, "experiment config file (key = value lines)");
    app.add_option("--estimator", estimator, "price|ad|fd|cd|ad2|fdad|cdad|dist|all");
    app.add_option("--bump-bp", bump_bp, "finite-difference bump sizes in basis points")
        ->delimiter(',');
    auto* paths_opt = app.add_option("--paths", paths, "number of Monte Carlo paths");
    auto* seed_opt = app.add_option("--seed", seed, "RNG seed");
    app.add_option("--workers", workers, "worker threads (0 = hardware)");
    app.add_option("--out-dir", out_dir, "output directory for CSV reports");
    app.add_option("--timing", timing, "wall|off (off zeroes timing columns)");

    CLI11_PARSE(app, argc, argv);
    have_seed = seed_opt->count() > 0;

    try {
        xva::harness::ExperimentConfig cfg;
        if (!config_path.empty()) cfg = xva::harness::load_config_file(config_path);
        if (!estimator.empty()) cfg.estimator = estimator;
        if (!bump_bp.empty()) cfg.bump_bp = bump_bp;
        if (paths_opt->count() > 0) cfg.paths = paths;
        if (have_seed) cfg.seed = seed;
        if (workers >= 0) cfg.workers = workers;
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!timing.empty()) cfg.timing = timing;

        const auto files = xva::harness::run(cfg);
        for (const auto& f : files) std::cout << "wrote " << f << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
