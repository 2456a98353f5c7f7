#include "xva/harness/runner.hpp"

#include "xva/curves/curve_csv.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>

namespace xva::harness {

namespace {

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string bump_tag(double bp) {
    char buf[32];
    if (bp == std::floor(bp))
        std::snprintf(buf, sizeof buf, "%dbp", int(bp));
    else
        std::snprintf(buf, sizeof buf, "%gbp", bp);
    return buf;
}

ReportRow make_row(const std::string& coordinate, const std::string& pillar,
                   const greeks::EstimatorRun& run, std::size_t c, bool timing_on) {
    const double wall = timing_on ? run.wall_time_s() : 0.0;
    return ReportRow{coordinate, pillar,         run.mean(c), run.variance(c),
                     run.half_ci98(c), wall, timing_on ? run.efficiency(c) : 0.0};
}

std::vector<ReportRow> price_rows(const greeks::EstimatorRun& run, bool timing_on) {
    return {make_row("price", "all", run, 0, timing_on)};
}

struct EffRow {
    std::string estimator, coordinate, pillar;
    double efficiency;
};

void write_efficiency(const std::string& path, const std::vector<EffRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    XVA_REQUIRE(out.good(), "report: cannot open '" << path << "'");
    out << "estimator,coordinate,pillar_label,efficiency,log10_efficiency\n";
    for (const auto& r : rows)
        out << r.estimator << ',' << r.coordinate << ',' << r.pillar << ','
            << fmt(r.efficiency) << ',' << fmt(std::log10(r.efficiency)) << '\n';
}

} // namespace

void write_report(const std::string& path, const std::vector<ReportRow>& rows) {
    std::ofstream out(path, std::ios::binary);
    XVA_REQUIRE(out.good(), "report: cannot open '" << path << "'");
    out << "coordinate,pillar_label,mean,variance,half_ci_98,wall_time_s,efficiency\n";
    for (const auto& r : rows)
        out << r.coordinate << ',' << r.pillar << ',' << fmt(r.mean) << ',' << fmt(r.variance)
            << ',' << fmt(r.half_ci) << ',' << fmt(r.wall_time) << ',' << fmt(r.efficiency)
            << '\n';
}

std::vector<ReportRow> delta_rows(const greeks::McProblem&, const greeks::EstimatorRun& run,
                                  bool timing_on) {
    std::vector<ReportRow> rows;
    for (std::size_t c = 0; c < run.n_coords(); ++c) {
        const std::string& label = run.labels()[c];
        std::string coord, pillar;
        if (label == "credit:parallel") {
            coord = "credit_delta_parallel";
            pillar = "all";
        } else if (label == "rate:parallel") {
            coord = "rate_delta_parallel";
            pillar = "all";
        } else if (label.rfind("rate:", 0) == 0) {
            coord = "rate_delta";
            pillar = label;
        } else {
            coord = "credit_delta";
            pillar = label;
        }
        rows.push_back(make_row(coord, pillar, run, c, timing_on));
    }
    return rows;
}

std::vector<ReportRow> gamma_rows(const greeks::McProblem& p, const greeks::EstimatorRun& run,
                                  bool timing_on, std::size_t sel_credit, std::size_t sel_rate) {
    const greeks::GammaLayout lay = greeks::gamma_layout(p);
    const auto& th = p.theta_labels();
    const auto& ps = p.psi_labels();
    std::vector<ReportRow> rows;
    for (std::size_t k = 0; k < lay.nt; ++k)
        for (std::size_t i = 0; i < lay.np; ++i)
            rows.push_back(make_row("cross_gamma", th[k] + "|" + ps[i], run, lay.cross(k, i),
                                    timing_on));
    for (std::size_t k = 0; k < lay.nt; ++k)
        for (std::size_t l = 0; l < lay.nt; ++l)
            rows.push_back(make_row("credit_gamma", th[k] + "|" + th[l], run, lay.credit(k, l),
                                    timing_on));
    for (std::size_t k = 0; k < lay.nt; ++k)
        rows.push_back(make_row("cross_gamma_rate_parallel", th[k], run, lay.cross_row(k),
                                timing_on));
    for (std::size_t i = 0; i < lay.np; ++i)
        rows.push_back(make_row("cross_gamma_credit_parallel", ps[i], run, lay.cross_col(i),
                                timing_on));
    rows.push_back(make_row("cross_gamma_parallel", "all", run, lay.cross_total(), timing_on));
    for (std::size_t k = 0; k < lay.nt; ++k)
        rows.push_back(
            make_row("credit_gamma_parallel_row", th[k], run, lay.credit_row(k), timing_on));
    rows.push_back(make_row("credit_gamma_parallel", "all", run, lay.credit_total(), timing_on));
    // disaggregated slices at the largest-|delta| pillars
    for (std::size_t k = 0; k < lay.nt; ++k)
        rows.push_back(make_row("cross_gamma_slice_rate", th[k] + "|" + ps[sel_rate], run,
                                lay.cross(k, sel_rate), timing_on));
    for (std::size_t l = 0; l < lay.nt; ++l)
        rows.push_back(make_row("credit_gamma_slice", th[l] + "|" + th[sel_credit], run,
                                lay.credit(l, sel_credit), timing_on));
    return rows;
}

greeks::CvaProblem build_problem(const ExperimentConfig& cfg) {
    cfg.validate();
    auto rate = curves::load_curve_csv(cfg.rate_curve);
    auto credit = curves::load_curve_csv(cfg.credit_curve);

    greeks::CvaSetup setup{
        hw::HullWhiteModel{cfg.kappa, cfg.sigma,
                           curves::ZeroCurve(std::move(rate.labels), std::move(rate.times),
                                             std::move(rate.zeros))},
        hw::SwapSpec{cfg.notional, cfg.fixed_rate, cfg.maturity_years, 1.0, cfg.receive_fixed},
        curves::HazardCurve(std::move(credit.labels), std::move(credit.times),
                            std::move(credit.zeros)),
        std::nullopt,
        cfg.rho,
        cfg.lgd,
        cfg.mode == "bilateral" ? payoff::CvaMode::bilateral : payoff::CvaMode::unilateral,
        cfg.discounting == "pathwise" ? payoff::Discounting::pathwise
                                      : payoff::Discounting::curve,
        cfg.pair_weight == "copula" ? greeks::PairWeightKind::copula
                                    : greeks::PairWeightKind::survivor_free,
        cfg.steps_per_period};
    if (!cfg.credit_curve2.empty()) {
        auto credit2 = curves::load_curve_csv(cfg.credit_curve2);
        setup.hazard2 = curves::HazardCurve(std::move(credit2.labels), std::move(credit2.times),
                                            std::move(credit2.zeros));
    }
    return greeks::CvaProblem(std::move(setup));
}

std::vector<std::string> run(const ExperimentConfig& cfg) {
    const greeks::CvaProblem problem = build_problem(cfg);
    std::filesystem::create_directories(cfg.out_dir);
    const greeks::RunConfig rc{cfg.paths, cfg.seed, cfg.workers};
    const bool timing_on = cfg.timing == "wall";
    std::vector<std::string> written;

    const auto save = [&](const std::string& name, const std::vector<ReportRow>& rows) {
        const std::string path = cfg.out_dir + "/" + name;
        write_report(path, rows);
        written.push_back(path);
    };

    const std::string& est = cfg.estimator;
    const bool all = est == "all";
    const bool want_gamma = all || est == "ad2" || est == "fdad" || est == "cdad";
    const bool want_ad = all || est == "ad" || want_gamma;

    std::optional<greeks::EstimatorRun> ad_run;
    if (want_ad) {
        ad_run = greeks::delta_conditional(problem, rc);
        save("delta_ad.csv", delta_rows(problem, *ad_run, timing_on));
    }
    if (all || est == "price")
        save("price.csv", price_rows(greeks::price(problem, rc), timing_on));
    if ((all && problem.supports_distributional()) || est == "dist")
        save("delta_dist.csv",
             delta_rows(problem, greeks::delta_distributional(problem, rc), timing_on));

    // finite-difference repricing runs, kept for the efficiency tables
    std::vector<std::pair<std::string, greeks::EstimatorRun>> fd_credit;
    for (const greeks::FdKind kind : {greeks::FdKind::forward, greeks::FdKind::central}) {
        const bool wanted = all || est == (kind == greeks::FdKind::forward ? "fd" : "cd");
        if (!wanted) continue;
        const std::string key = kind == greeks::FdKind::forward ? "fd" : "cd";
        for (double bp : cfg.bump_bp) {
            const double h = bp * 1e-4;
            auto credit_run = greeks::fd_delta(problem, rc, kind, greeks::BumpTarget::credit, h);
            save("delta_" + key + "_credit_" + bump_tag(bp) + ".csv",
                 delta_rows(problem, credit_run, timing_on));
            auto rates_run = greeks::fd_delta(problem, rc, kind, greeks::BumpTarget::rates, h);
            save("delta_" + key + "_rates_" + bump_tag(bp) + ".csv",
                 delta_rows(problem, rates_run, timing_on));
            fd_credit.emplace_back(key + "_" + bump_tag(bp), std::move(credit_run));
        }
    }

    // second order: AD2 and finite differences of AD at the largest bump
    std::vector<std::pair<std::string, greeks::EstimatorRun>> gamma_runs;
    std::size_t sel_credit = 0, sel_rate = 0;
    if (want_gamma) {
        const greeks::DeltaLayout dl = greeks::delta_layout(problem);
        for (std::size_t k = 1; k < dl.nt; ++k)
            if (std::fabs(ad_run->mean(dl.theta(k))) >
                std::fabs(ad_run->mean(dl.theta(sel_credit))))
                sel_credit = k;
        for (std::size_t i = 1; i < dl.np; ++i)
            if (std::fabs(ad_run->mean(dl.psi(i))) > std::fabs(ad_run->mean(dl.psi(sel_rate))))
                sel_rate = i;

        const double gbp = *std::max_element(cfg.bump_bp.begin(), cfg.bump_bp.end());
        if (all || est == "ad2")
            gamma_runs.emplace_back("ad2", greeks::gamma_ad2(problem, rc));
        if (all || est == "fdad")
            gamma_runs.emplace_back("fdad_" + bump_tag(gbp),
                                    greeks::fd_gamma_on_ad(problem, rc, greeks::FdKind::forward,
                                                           gbp * 1e-4));
        if (all || est == "cdad")
            gamma_runs.emplace_back("cdad_" + bump_tag(gbp),
                                    greeks::fd_gamma_on_ad(problem, rc, greeks::FdKind::central,
                                                           gbp * 1e-4));
        for (const auto& [name, grun] : gamma_runs)
            save("gamma_" + name + ".csv",
                 gamma_rows(problem, grun, timing_on, sel_credit, sel_rate));
    }

    // efficiency tables over whatever runs are present
    if (ad_run && !fd_credit.empty()) {
        std::vector<EffRow> rows;
        const greeks::DeltaLayout dl = greeks::delta_layout(problem);
        const auto add = [&](const std::string& name, const greeks::EstimatorRun& r,
                             std::size_t coord, const std::string& pillar) {
            rows.push_back(EffRow{name, "credit_delta", pillar,
                                  timing_on ? r.efficiency(coord) : 0.0});
        };
        for (std::size_t k = 0; k < dl.nt; ++k)
            add("ad", *ad_run, dl.theta(k), problem.theta_labels()[k]);
        add("ad", *ad_run, dl.theta_parallel(), "all");
        for (const auto& [name, r] : fd_credit) {
            for (std::size_t k = 0; k < dl.nt; ++k)
                add(name, r, k, problem.theta_labels()[k]);
            add(name, r, dl.nt, "all");
        }
        const std::string path = cfg.out_dir + "/efficiency_credit_delta.csv";
        write_efficiency(path, rows);
        written.push_back(path);
    }
    if (!gamma_runs.empty()) {
        const greeks::GammaLayout lay = greeks::gamma_layout(problem);
        std::vector<EffRow> cross_rows, credit_rows;
        for (const auto& [name, r] : gamma_runs) {
            const auto eff = [&](std::size_t c) { return timing_on ? r.efficiency(c) : 0.0; };
            cross_rows.push_back({name, "cross_gamma_parallel", "all", eff(lay.cross_total())});
            credit_rows.push_back(
                {name, "credit_gamma_parallel", "all", eff(lay.credit_total())});
            for (std::size_t k = 0; k < lay.nt; ++k) {
                cross_rows.push_back({name, "cross_gamma_rate_parallel",
                                      problem.theta_labels()[k], eff(lay.cross_row(k))});
                cross_rows.push_back({name, "cross_gamma_slice_rate",
                                      problem.theta_labels()[k] + "|" +
                                          problem.psi_labels()[sel_rate],
                                      eff(lay.cross(k, sel_rate))});
                credit_rows.push_back({name, "credit_gamma_parallel_row",
                                       problem.theta_labels()[k], eff(lay.credit_row(k))});
                credit_rows.push_back({name, "credit_gamma_slice",
                                       problem.theta_labels()[k] + "|" +
                                           problem.theta_labels()[sel_credit],
                                       eff(lay.credit(k, sel_credit))});
            }
        }
        write_efficiency(cfg.out_dir + "/efficiency_cross_gamma.csv", cross_rows);
        written.push_back(cfg.out_dir + "/efficiency_cross_gamma.csv");
        write_efficiency(cfg.out_dir + "/efficiency_credit_gamma.csv", credit_rows);
        written.push_back(cfg.out_dir + "/efficiency_credit_gamma.csv");
    }
    return written;
}

} // namespace xva::harness
