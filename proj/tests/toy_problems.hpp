#pragma once

#include "xva/credit/weights.hpp"
#include "xva/greeks/problem.hpp"
#include "xva/rng/philox.hpp"

// Closed-form toy problems shared by the greeks tests and the acceptance
// suite. Constant hazard lambda over [0, 1], payoff f = psi 1{tau <= 1}:
//   E[f]                        = psi (1 - e^-lambda)
//   d/dlambda                   = psi e^-lambda
//   d2/dpsi dlambda             = e^-lambda
//   d2/dlambda2                 = -psi e^-lambda
// The true default-time law needs no censoring subtleties: Lambda(t) =
// lambda t for all t because the curve has a single pillar.

namespace xva::testing {

class ToyProblem final : public greeks::McProblem {
  public:
    ToyProblem(double lambda, double psi, double maturity = 1.0)
        : lambda_(lambda), psi_(psi), maturity_(maturity),
          curve_({"1Y"}, {1.0}, {lambda}),
          theta_labels_{"credit:1Y"}, psi_labels_{"rate:level"} {}

    std::size_t n_theta() const override { return 1; }
    std::size_t n_psi() const override { return 1; }
    const std::vector<std::string>& theta_labels() const override { return theta_labels_; }
    const std::vector<std::string>& psi_labels() const override { return psi_labels_; }

    std::unique_ptr<greeks::McProblem> bump_theta(std::size_t, double dh) const override {
        return std::make_unique<ToyProblem>(lambda_ + dh, psi_, maturity_);
    }
    std::unique_ptr<greeks::McProblem> bump_psi(std::size_t, double dh) const override {
        return std::make_unique<ToyProblem>(lambda_, psi_ + dh, maturity_);
    }
    bool supports_distributional() const override { return true; }

    void eval_path(std::uint64_t seed, std::uint64_t path, greeks::EvalMode mode,
                   greeks::Workspace& ws, greeks::PathOutputs& out) const override {
        rng::PathRng rng(seed, path);
        const credit::DefaultSample s =
            credit::sample_default(curve_, maturity_, rng.next_uniform());
        out.draws = rng.draws();
        out.has_grads = false;
        out.has_w_hess = false;
        out.f = s.defaulted[0] ? psi_ : 0.0;

        if (mode == greeks::EvalMode::value) return;
        if (mode == greeks::EvalMode::distributional) {
            // single jump at T = 1 of size -psi; no smooth tau dependence
            out.dist_dtheta.assign(1, psi_ * std::exp(-lambda_ * maturity_) * maturity_);
            return;
        }
        const bool hess = mode == greeks::EvalMode::second_order;
        const credit::CreditWeight w =
            credit::weight_single_censored(curve_, s, maturity_, ws.tape_w, hess);
        out.dw_dtheta.assign(w.grad.values().begin(), w.grad.values().end());
        out.df_dpsi.assign(1, s.defaulted[0] ? 1.0 : 0.0);
        if (hess) {
            out.w_hess = w.hess;
            out.has_w_hess = true;
        }
        out.has_grads = true;
    }

  private:
    double lambda_, psi_, maturity_;
    curves::HazardCurve curve_;
    std::vector<std::string> theta_labels_, psi_labels_;
};

// Per-path first-order contribution is exactly 2 lambda (f = lambda, dw = 2),
// so CDAD/FDAD second differences are exact for any step.
class QuadProblem final : public greeks::McProblem {
  public:
    explicit QuadProblem(double lambda) : lambda_(lambda), theta_labels_{"credit:q"} {}

    std::size_t n_theta() const override { return 1; }
    std::size_t n_psi() const override { return 0; }
    const std::vector<std::string>& theta_labels() const override { return theta_labels_; }
    const std::vector<std::string>& psi_labels() const override { return psi_labels_; }

    std::unique_ptr<greeks::McProblem> bump_theta(std::size_t, double dh) const override {
        return std::make_unique<QuadProblem>(lambda_ + dh);
    }
    std::unique_ptr<greeks::McProblem> bump_psi(std::size_t, double) const override {
        return std::make_unique<QuadProblem>(lambda_);
    }

    void eval_path(std::uint64_t, std::uint64_t, greeks::EvalMode mode, greeks::Workspace&,
                   greeks::PathOutputs& out) const override {
        out.draws = 0;
        out.f = lambda_;
        out.has_w_hess = false;
        if (mode == greeks::EvalMode::value) return;
        out.dw_dtheta.assign(1, 2.0);
        out.df_dpsi.clear();
        out.has_grads = true;
    }

  private:
    double lambda_;
    std::vector<std::string> theta_labels_;
    std::vector<std::string> psi_labels_;
};

} // namespace xva::testing
