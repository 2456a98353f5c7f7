#include "xva/greeks/cva_problem.hpp"

namespace xva::greeks {

using ad::Active;

namespace {

std::vector<double> refined_grid(const hw::SwapSpec& swap, int steps) {
    XVA_REQUIRE(steps >= 1, "cva: steps_per_period must be >= 1");
    std::vector<double> g{0.0};
    for (int k = 0; k < swap.n_periods; ++k)
        for (int s = 1; s <= steps; ++s)
            g.push_back(swap.period * (k + double(s) / steps));
    return g;
}

curves::ZeroCurve bumped_zero_curve(const curves::ZeroCurve& c, std::size_t k, double dh) {
    std::vector<double> z(c.zeros().begin(), c.zeros().end());
    XVA_REQUIRE(k < z.size(), "bump: rate pillar " << k << " out of range");
    z[k] += dh;
    return curves::ZeroCurve(c.labels(), {c.times().begin(), c.times().end()}, std::move(z));
}

} // namespace

CvaProblem::CvaProblem(CvaSetup setup)
    : setup_(std::move(setup)),
      payoff_{setup_.lgd, setup_.swap.maturity(), setup_.mode, setup_.discounting},
      scheme_(setup_.model, refined_grid(setup_.swap, setup_.steps_per_period)) {
    XVA_REQUIRE(setup_.lgd >= 0.0 && setup_.lgd <= 1.0,
                "cva: lgd " << setup_.lgd << " outside [0,1]");
    const bool two = setup_.mode == payoff::CvaMode::bilateral;
    XVA_REQUIRE(!two || setup_.hazard2.has_value(), "cva: bilateral mode needs a second name");

    for (int k = 0; k < setup_.swap.n_periods; ++k)
        pay_idx_.push_back(std::size_t(k + 1) * setup_.steps_per_period);

    for (const auto& l : setup_.hazard1.labels()) theta_labels_.push_back("credit:" + l);
    if (setup_.hazard2)
        for (const auto& l : setup_.hazard2->labels()) theta_labels_.push_back("credit2:" + l);
    for (const auto& l : setup_.model.curve.labels()) psi_labels_.push_back("rate:" + l);

    if (supports_distributional()) {
        ad::Tape tape;
        const auto& hc = setup_.hazard1;
        for (int i = 0; i < setup_.swap.n_periods; ++i) {
            const double date = setup_.swap.payment_date(i);
            tape.clear();
            std::vector<Active> th;
            for (double v : hc.zero_intensities()) th.push_back(tape.input(v));
            const Active lam = curves::detail::cumulative_hazard<Active>(
                hc.times(), std::span<const Active>(th), date);
            const ad::Gradient g = tape.gradient(lam);
            std::vector<double> row(g.values().begin(), g.values().end());
            const double surv = std::exp(-lam.value());
            for (double& v : row) v *= surv;
            jump_factors_.push_back(std::move(row));
        }
    }
}

std::unique_ptr<McProblem> CvaProblem::bump_theta(std::size_t k, double dh) const {
    CvaSetup s = setup_;
    const std::size_t m1 = setup_.hazard1.size();
    if (k < m1) {
        s.hazard1 = setup_.hazard1.with_bumped_pillar(k, dh);
    } else {
        XVA_REQUIRE(setup_.hazard2 && k < m1 + setup_.hazard2->size(),
                    "bump: credit pillar " << k << " out of range");
        s.hazard2 = setup_.hazard2->with_bumped_pillar(k - m1, dh);
    }
    return std::make_unique<CvaProblem>(std::move(s));
}

std::unique_ptr<McProblem> CvaProblem::bump_psi(std::size_t k, double dh) const {
    CvaSetup s = setup_;
    s.model.curve = bumped_zero_curve(setup_.model.curve, k, dh);
    return std::make_unique<CvaProblem>(std::move(s));
}

credit::DefaultSample CvaProblem::draw_default(rng::PathRng& rng) const {
    if (setup_.hazard2) {
        const double z1 = rng.next_normal();
        const double z2 = rng.next_normal();
        return credit::sample_default_pair(setup_.hazard1, *setup_.hazard2, payoff_.maturity,
                                           credit::GaussianCopula2(setup_.rho), z1, z2);
    }
    return credit::sample_default(setup_.hazard1, payoff_.maturity, rng.next_uniform());
}

void CvaProblem::sample_states(rng::PathRng& rng, std::vector<double>& x,
                               std::vector<double>& j_prefix) const {
    const std::size_t n = scheme_.n_steps();
    x.resize(n + 1);
    j_prefix.resize(n + 1);
    scheme_.sample_path(rng, x, std::span<double>(j_prefix).subspan(1));
    j_prefix[0] = 0.0;
    for (std::size_t i = 1; i <= n; ++i) j_prefix[i] += j_prefix[i - 1];
}

void CvaProblem::eval_path(std::uint64_t seed, std::uint64_t path, EvalMode mode, Workspace& ws,
                           PathOutputs& out) const {
    rng::PathRng rng(seed, path);
    sample_states(rng, ws.x, ws.j_prefix);
    const credit::DefaultSample sample = draw_default(rng);
    out.draws = rng.draws();
    out.has_grads = false;
    out.has_w_hess = false;

    const auto ctx = context<double>(setup_.model.curve.zeros(), ws.x, ws.j_prefix);
    const double tau = sample.tau[0];
    out.f = payoff::evaluate<double>(payoff_, sample, ctx, tau);

    if (mode == EvalMode::value) return;

    if (mode == EvalMode::distributional) {
        XVA_REQUIRE(supports_distributional(),
                    "distributional estimator: unilateral single-name only");
        eval_distributional(sample, ctx, ws, out);
        return;
    }

    if (out.f == 0.0) return; // zero contribution, skip both tapes

    // payoff gradient in the rate pillars
    ws.tape.clear();
    ws.act_zeros.clear();
    for (double v : setup_.model.curve.zeros()) ws.act_zeros.push_back(ws.tape.input(v));
    ws.act_x.clear();
    for (double v : ws.x) ws.act_x.push_back(ws.tape.constant(v));
    ws.act_j.clear();
    for (double v : ws.j_prefix) ws.act_j.push_back(ws.tape.constant(v));
    const auto ctx_act = context<Active>(ws.act_zeros, ws.act_x, ws.act_j);
    const Active tau_act = ws.tape.constant(tau);
    const Active f_act = payoff::cva_loss(payoff_, ctx_act, tau_act);
    const ad::Gradient gpsi = ws.tape.gradient(f_act);
    out.df_dpsi.assign(gpsi.values().begin(), gpsi.values().end());

    // weight gradient (and Hessian) in the credit pillars
    const bool hess = mode == EvalMode::second_order;
    credit::CreditWeight w;
    if (setup_.hazard2) {
        const credit::GaussianCopula2 cop(setup_.rho);
        w = setup_.pair_weight == PairWeightKind::copula
                ? credit::weight_pair_copula(setup_.hazard1, *setup_.hazard2, sample, cop,
                                             payoff_.maturity, ws.tape_w, hess)
                : credit::weight_pair_survivor_free(setup_.hazard1, *setup_.hazard2, sample, cop,
                                                    payoff_.maturity, ws.tape_w, hess);
    } else {
        w = credit::weight_single_censored(setup_.hazard1, sample, payoff_.maturity, ws.tape_w,
                                           hess);
    }
    if (w.used) {
        out.dw_dtheta.assign(w.grad.values().begin(), w.grad.values().end());
    } else {
        out.dw_dtheta.assign(n_theta(), 0.0);
    }
    if (hess && w.used) {
        out.w_hess = std::move(w.hess);
        out.has_w_hess = true;
    }
    out.has_grads = true;
}

void CvaProblem::eval_distributional(const credit::DefaultSample& sample,
                                     const hw::PricingContext<double>& ctx, Workspace& ws,
                                     PathOutputs& out) const {
    const std::size_t m = n_theta();
    out.dist_dtheta.assign(m, 0.0);

    // jump corrections accrue on every path
    const std::vector<double> jumps = payoff::jumps_at(payoff_, ctx);
    for (std::size_t i = 0; i < jumps.size(); ++i)
        for (std::size_t k = 0; k < m; ++k)
            out.dist_dtheta[k] -= jumps[i] * jump_factors_[i][k];

    // smooth part: df/dtau times dtau/dtheta = -(dLambda(tau)/dtheta)/lambda(tau)
    if (out.f != 0.0) {
        const double tau = sample.tau[0];
        ws.tape.clear();
        const Active tau_act = ws.tape.input(tau);
        ws.act_zeros.clear();
        for (double v : setup_.model.curve.zeros()) ws.act_zeros.push_back(ws.tape.constant(v));
        ws.act_x.clear();
        for (double v : ws.x) ws.act_x.push_back(ws.tape.constant(v));
        ws.act_j.clear();
        for (double v : ws.j_prefix) ws.act_j.push_back(ws.tape.constant(v));
        const auto ctx_act = context<Active>(ws.act_zeros, ws.act_x, ws.act_j);
        const Active f_act = payoff::cva_loss(payoff_, ctx_act, tau_act);
        const double df_dtau = ws.tape.gradient(f_act)[0];

        ws.tape_w.clear();
        std::vector<Active> th;
        for (double v : setup_.hazard1.zero_intensities()) th.push_back(ws.tape_w.input(v));
        const Active lam = curves::detail::cumulative_hazard<Active>(
            setup_.hazard1.times(), std::span<const Active>(th), tau);
        const ad::Gradient dlam = ws.tape_w.gradient(lam);
        const double rate = setup_.hazard1.hazard(tau);
        for (std::size_t k = 0; k < m; ++k)
            out.dist_dtheta[k] -= df_dtau * dlam[k] / rate;
    }
}

} // namespace xva::greeks
