#pragma once

#include "xva/ad/tape.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace xva::greeks {

enum class EvalMode { value, first_order, second_order, distributional };

struct PathOutputs {
    double f = 0.0;
    bool has_grads = false;               // df_dpsi / dw_dtheta filled
    std::vector<double> df_dpsi;          // path-wise payoff gradient in psi
    std::vector<double> dw_dtheta;        // weight gradient in theta
    ad::SmallHessian w_hess;              // weight Hessian (second order only)
    bool has_w_hess = false;
    std::vector<double> dist_dtheta;      // distributional contribution
    std::uint64_t draws = 0;              // RNG draws consumed on this path
};

struct Workspace {
    ad::Tape tape;   // payoff-side tape
    ad::Tape tape_w; // weight-side tape
    std::vector<double> x, j_prefix;
    std::vector<ad::Active> act_zeros, act_x, act_j;
};

// One Monte Carlo pricing problem: theta are the credit-model variables,
// psi the market variables the payoff depends on. Bumped clones share the
// (seed, path) draw keying, which is what makes finite differences common
// random numbers by construction.
class McProblem {
  public:
    virtual ~McProblem() = default;

    virtual std::size_t n_theta() const = 0;
    virtual std::size_t n_psi() const = 0;
    virtual const std::vector<std::string>& theta_labels() const = 0;
    virtual const std::vector<std::string>& psi_labels() const = 0;

    virtual std::unique_ptr<McProblem> bump_theta(std::size_t k, double dh) const = 0;
    virtual std::unique_ptr<McProblem> bump_psi(std::size_t k, double dh) const = 0;

    virtual bool supports_distributional() const { return false; }

    virtual void eval_path(std::uint64_t seed, std::uint64_t path, EvalMode mode, Workspace& ws,
                           PathOutputs& out) const = 0;
};

} // namespace xva::greeks
