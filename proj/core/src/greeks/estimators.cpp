#include "xva/greeks/estimators.hpp"

#include "xva/common/require.hpp"

#include <memory>

namespace xva::greeks {

DeltaLayout delta_layout(const McProblem& p) { return {p.n_theta(), p.n_psi()}; }
GammaLayout gamma_layout(const McProblem& p) { return {p.n_theta(), p.n_psi()}; }

std::vector<std::string> delta_labels(const McProblem& p) {
    std::vector<std::string> l;
    for (const auto& s : p.theta_labels()) l.push_back(s);
    for (const auto& s : p.psi_labels()) l.push_back(s);
    if (p.n_theta()) l.push_back("credit:parallel");
    if (p.n_psi()) l.push_back("rate:parallel");
    return l;
}

std::vector<std::string> gamma_labels(const McProblem& p) {
    std::vector<std::string> l;
    const auto& th = p.theta_labels();
    const auto& ps = p.psi_labels();
    for (const auto& a : th)
        for (const auto& b : ps) l.push_back("cross:" + a + "|" + b);
    for (const auto& a : th)
        for (const auto& b : th) l.push_back("gamma:" + a + "|" + b);
    for (const auto& a : th) l.push_back("cross:" + a + "|parallel");
    for (const auto& b : ps) l.push_back("cross:parallel|" + b);
    l.push_back("cross:parallel|parallel");
    for (const auto& a : th) l.push_back("gamma:" + a + "|parallel");
    l.push_back("gamma:parallel|parallel");
    return l;
}

void GammaLayout::aggregate(std::span<double> out) const {
    double cross_tot = 0.0;
    for (std::size_t k = 0; k < nt; ++k) {
        double row = 0.0;
        for (std::size_t i = 0; i < np; ++i) row += out[cross(k, i)];
        out[cross_row(k)] = row;
        cross_tot += row;
    }
    for (std::size_t i = 0; i < np; ++i) {
        double col = 0.0;
        for (std::size_t k = 0; k < nt; ++k) col += out[cross(k, i)];
        out[cross_col(i)] = col;
    }
    out[cross_total()] = cross_tot;
    double credit_tot = 0.0;
    for (std::size_t k = 0; k < nt; ++k) {
        double row = 0.0;
        for (std::size_t l = 0; l < nt; ++l) row += out[credit(k, l)];
        out[credit_row(k)] = row;
        credit_tot += row;
    }
    out[credit_total()] = credit_tot;
}

namespace {

struct WorkerState {
    Workspace ws;
    PathOutputs out;
};

void require_same_draws(std::uint64_t base, std::uint64_t other) {
    XVA_REQUIRE(base == other, "common random numbers violated: bumped run consumed "
                                   << other << " draws vs " << base);
}

} // namespace

EstimatorRun price(const McProblem& p, const RunConfig& cfg) {
    const auto factory = [&p, &cfg]() {
        auto st = std::make_shared<WorkerState>();
        return PathFn([&p, seed = cfg.seed, st](std::uint64_t path, std::span<double> out) {
            p.eval_path(seed, path, EvalMode::value, st->ws, st->out);
            out[0] = st->out.f;
        });
    };
    return run_mc(cfg, {"price"}, factory);
}

EstimatorRun delta_conditional(const McProblem& p, const RunConfig& cfg) {
    const DeltaLayout lay = delta_layout(p);
    const auto factory = [&p, &cfg, lay]() {
        auto st = std::make_shared<WorkerState>();
        return PathFn([&p, lay, seed = cfg.seed, st](std::uint64_t path, std::span<double> out) {
            p.eval_path(seed, path, EvalMode::first_order, st->ws, st->out);
            if (!st->out.has_grads) return; // zero contribution
            double tpar = 0.0, ppar = 0.0;
            for (std::size_t k = 0; k < lay.nt; ++k) {
                const double v = st->out.f * st->out.dw_dtheta[k];
                out[lay.theta(k)] = v;
                tpar += v;
            }
            for (std::size_t i = 0; i < lay.np; ++i) {
                const double v = st->out.df_dpsi[i];
                out[lay.psi(i)] = v;
                ppar += v;
            }
            out[lay.theta_parallel()] = tpar;
            out[lay.psi_parallel()] = ppar;
        });
    };
    return run_mc(cfg, delta_labels(p), factory);
}

EstimatorRun delta_distributional(const McProblem& p, const RunConfig& cfg) {
    XVA_REQUIRE(p.supports_distributional(),
                "distributional estimator unsupported for this problem (single-name unilateral "
                "only)");
    const std::size_t nt = p.n_theta();
    std::vector<std::string> labels = p.theta_labels();
    labels.push_back("credit:parallel");
    const auto factory = [&p, &cfg, nt]() {
        auto st = std::make_shared<WorkerState>();
        return PathFn([&p, nt, seed = cfg.seed, st](std::uint64_t path, std::span<double> out) {
            p.eval_path(seed, path, EvalMode::distributional, st->ws, st->out);
            double par = 0.0;
            for (std::size_t k = 0; k < nt; ++k) {
                out[k] = st->out.dist_dtheta[k];
                par += out[k];
            }
            out[nt] = par;
        });
    };
    return run_mc(cfg, std::move(labels), factory);
}

EstimatorRun gamma_ad2(const McProblem& p, const RunConfig& cfg) {
    const GammaLayout lay = gamma_layout(p);
    const auto factory = [&p, &cfg, lay]() {
        auto st = std::make_shared<WorkerState>();
        return PathFn([&p, lay, seed = cfg.seed, st](std::uint64_t path, std::span<double> out) {
            p.eval_path(seed, path, EvalMode::second_order, st->ws, st->out);
            if (!st->out.has_grads) return;
            const auto& o = st->out;
            for (std::size_t k = 0; k < lay.nt; ++k)
                for (std::size_t i = 0; i < lay.np; ++i)
                    out[lay.cross(k, i)] = o.dw_dtheta[k] * o.df_dpsi[i];
            for (std::size_t k = 0; k < lay.nt; ++k)
                for (std::size_t l = 0; l < lay.nt; ++l) {
                    const double h = o.has_w_hess ? o.w_hess(k, l) : 0.0;
                    out[lay.credit(k, l)] = o.f * (h + o.dw_dtheta[k] * o.dw_dtheta[l]);
                }
            lay.aggregate(out);
        });
    };
    return run_mc(cfg, gamma_labels(p), factory);
}

EstimatorRun fd_delta(const McProblem& p, const RunConfig& cfg, FdKind kind, BumpTarget target,
                      double bump) {
    XVA_REQUIRE(bump > 0.0, "fd_delta: bump size must be positive");
    const bool credit = target == BumpTarget::credit;
    const std::size_t m = credit ? p.n_theta() : p.n_psi();
    XVA_REQUIRE(m > 0, "fd_delta: no pillars to bump");

    auto bumped = std::make_shared<std::vector<std::unique_ptr<McProblem>>>();
    for (std::size_t k = 0; k < m; ++k) {
        bumped->push_back(credit ? p.bump_theta(k, bump) : p.bump_psi(k, bump));
        if (kind == FdKind::central)
            bumped->push_back(credit ? p.bump_theta(k, -bump) : p.bump_psi(k, -bump));
    }

    std::vector<std::string> labels = credit ? p.theta_labels() : p.psi_labels();
    labels.push_back(credit ? "credit:parallel" : "rate:parallel");

    const auto factory = [&p, &cfg, bumped, kind, bump, m]() {
        auto st = std::make_shared<WorkerState>();
        return PathFn([&p, bumped, kind, bump, m, seed = cfg.seed,
                       st](std::uint64_t path, std::span<double> out) {
            double base = 0.0;
            std::uint64_t draws = 0;
            if (kind == FdKind::forward) {
                p.eval_path(seed, path, EvalMode::value, st->ws, st->out);
                base = st->out.f;
                draws = st->out.draws;
            }
            double par = 0.0;
            for (std::size_t k = 0; k < m; ++k) {
                double v;
                if (kind == FdKind::forward) {
                    (*bumped)[k]->eval_path(seed, path, EvalMode::value, st->ws, st->out);
                    require_same_draws(draws, st->out.draws);
                    v = (st->out.f - base) / bump;
                } else {
                    (*bumped)[2 * k]->eval_path(seed, path, EvalMode::value, st->ws, st->out);
                    const double up = st->out.f;
                    draws = st->out.draws;
                    (*bumped)[2 * k + 1]->eval_path(seed, path, EvalMode::value, st->ws, st->out);
                    require_same_draws(draws, st->out.draws);
                    v = (up - st->out.f) / (2.0 * bump);
                }
                out[k] = v;
                par += v;
            }
            out[m] = par;
        });
    };
    return run_mc(cfg, std::move(labels), factory);
}

EstimatorRun fd_gamma_on_ad(const McProblem& p, const RunConfig& cfg, FdKind kind, double bump) {
    XVA_REQUIRE(bump > 0.0, "fd_gamma_on_ad: bump size must be positive");
    const GammaLayout lay = gamma_layout(p);

    auto bumped = std::make_shared<std::vector<std::unique_ptr<McProblem>>>();
    for (std::size_t k = 0; k < lay.nt; ++k) {
        bumped->push_back(p.bump_theta(k, bump));
        if (kind == FdKind::central) bumped->push_back(p.bump_theta(k, -bump));
    }

    const auto factory = [&p, &cfg, bumped, kind, bump, lay]() {
        auto st = std::make_shared<WorkerState>();
        auto up = std::make_shared<PathOutputs>();
        return PathFn([&p, bumped, kind, bump, lay, seed = cfg.seed, st,
                       up](std::uint64_t path, std::span<double> out) {
            const std::size_t nt = lay.nt, np = lay.np;
            PathOutputs& base = *up; // reused buffer for the minus/base side
            std::uint64_t draws = 0;
            if (kind == FdKind::forward) {
                p.eval_path(seed, path, EvalMode::first_order, st->ws, base);
                draws = base.draws;
            }
            for (std::size_t k = 0; k < nt; ++k) {
                if (kind == FdKind::forward) {
                    (*bumped)[k]->eval_path(seed, path, EvalMode::first_order, st->ws, st->out);
                    require_same_draws(draws, st->out.draws);
                } else {
                    (*bumped)[2 * k]->eval_path(seed, path, EvalMode::first_order, st->ws,
                                                st->out);
                    draws = st->out.draws;
                    (*bumped)[2 * k + 1]->eval_path(seed, path, EvalMode::first_order, st->ws,
                                                    base);
                    require_same_draws(draws, base.draws);
                }
                const double h = kind == FdKind::forward ? bump : 2.0 * bump;
                const auto& plus = st->out;
                for (std::size_t i = 0; i < np; ++i) {
                    const double a = plus.has_grads ? plus.df_dpsi[i] : 0.0;
                    const double b = base.has_grads ? base.df_dpsi[i] : 0.0;
                    out[lay.cross(k, i)] = (a - b) / h;
                }
                for (std::size_t l = 0; l < nt; ++l) {
                    const double a = plus.has_grads ? plus.f * plus.dw_dtheta[l] : 0.0;
                    const double b = base.has_grads ? base.f * base.dw_dtheta[l] : 0.0;
                    out[lay.credit(k, l)] = (a - b) / h;
                }
            }
            lay.aggregate(out);
        });
    };
    return run_mc(cfg, gamma_labels(p), factory);
}

} // namespace xva::greeks
