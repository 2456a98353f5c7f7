#pragma once

#include "xva/credit/weights.hpp"
#include "xva/greeks/problem.hpp"
#include "xva/hw/simulation.hpp"
#include "xva/hw/swap.hpp"
#include "xva/payoff/cva.hpp"

#include <optional>

namespace xva::greeks {

enum class PairWeightKind { copula, survivor_free };

struct CvaSetup {
    hw::HullWhiteModel model;
    hw::SwapSpec swap;
    curves::HazardCurve hazard1;
    std::optional<curves::HazardCurve> hazard2;
    double rho = 0.0;
    double lgd = 0.6;
    payoff::CvaMode mode = payoff::CvaMode::unilateral;
    payoff::Discounting discounting = payoff::Discounting::curve;
    PairWeightKind pair_weight = PairWeightKind::copula;
    // simulation grid points per coupon period; default-time states are
    // bridged inside one fine interval, so finer grids tighten the exposure
    // resolution at default
    int steps_per_period = 12;
};

// The desk problem: one swap, Hull-White exposure, censored default times.
class CvaProblem final : public McProblem {
  public:
    explicit CvaProblem(CvaSetup setup);

    std::size_t n_theta() const override { return theta_labels_.size(); }
    std::size_t n_psi() const override { return psi_labels_.size(); }
    const std::vector<std::string>& theta_labels() const override { return theta_labels_; }
    const std::vector<std::string>& psi_labels() const override { return psi_labels_; }

    std::unique_ptr<McProblem> bump_theta(std::size_t k, double dh) const override;
    std::unique_ptr<McProblem> bump_psi(std::size_t k, double dh) const override;
    bool supports_distributional() const override {
        return setup_.mode == payoff::CvaMode::unilateral;
    }

    void eval_path(std::uint64_t seed, std::uint64_t path, EvalMode mode, Workspace& ws,
                   PathOutputs& out) const override;

    const CvaSetup& setup() const { return setup_; }
    const hw::GridScheme& scheme() const { return scheme_; }
    std::span<const std::size_t> pay_indices() const { return pay_idx_; }

    // Per-path pricing context over caller-held state arrays; x and j_prefix
    // live on the fine grid (j_prefix[0] = 0).
    template <class S>
    hw::PricingContext<S> context(std::span<const S> zeros, std::span<const S> x,
                                  std::span<const S> j_prefix) const {
        hw::PricingContext<S> ctx;
        ctx.kappa = setup_.model.kappa;
        ctx.sigma = setup_.model.sigma;
        ctx.swap = &setup_.swap;
        ctx.curve_times = setup_.model.curve.times();
        ctx.grid = scheme_.times();
        ctx.pay_idx = pay_idx_;
        ctx.bridges = scheme_.bridges();
        ctx.zeros = zeros;
        ctx.x = x;
        ctx.j_prefix = j_prefix;
        return ctx;
    }

    credit::DefaultSample draw_default(rng::PathRng& rng) const;

    // Samples one path of (x, cumulative integral) on the fine grid.
    void sample_states(rng::PathRng& rng, std::vector<double>& x,
                       std::vector<double>& j_prefix) const;

  private:
    void eval_distributional(const credit::DefaultSample& sample,
                             const hw::PricingContext<double>& ctx, Workspace& ws,
                             PathOutputs& out) const;

    CvaSetup setup_;
    payoff::CvaPayoff payoff_;
    hw::GridScheme scheme_;
    std::vector<std::size_t> pay_idx_;
    std::vector<std::string> theta_labels_, psi_labels_;
    // jump-correction factors for the distributional estimator:
    // g[i][k] = e^{-Lambda(T_i)} dLambda(T_i)/dtheta_k
    std::vector<std::vector<double>> jump_factors_;
};

} // namespace xva::greeks
