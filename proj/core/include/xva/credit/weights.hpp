#pragma once

#include "xva/ad/tape.hpp"
#include "xva/credit/default_sample.hpp"
#include "xva/curves/hazard_curve.hpp"

namespace xva::credit {

// Conditional log-density weight of the sampled (censored) default times and
// its derivatives in the credit pillars. The gradient multiplies the payoff in
// the first-order estimator; the Hessian feeds the pure credit Gamma.
struct CreditWeight {
    double value = 0.0;
    ad::Gradient grad;       // over the name's pillars, or [name1, name2]
    ad::SmallHessian hess;   // true log-density Hessian (optional)
    bool has_hessian = false;
    bool used = true;        // false on regions the bilateral estimator zeroes
};

// Single censored name: w = 1{tau<=T} [-Lambda(tau) + log lambda(tau)]
//                           - 1{tau>T} Lambda(T).
CreditWeight weight_single_censored(const curves::HazardCurve& curve, const DefaultSample& sample,
                                    double maturity, ad::Tape& tape, bool with_hessian = false);

// Two names keeping the full grade vector. The gradient uses the rewriting
// with the frozen constants d_i = dlog rho/du_i (1-u_i), which are never
// differentiated; the Hessian re-tapes the unfrozen log density, which is the
// object whose second derivative the pure-Gamma estimator needs.
CreditWeight weight_pair_copula(const curves::HazardCurve& c1, const curves::HazardCurve& c2,
                                const DefaultSample& sample, const GaussianCopula2& copula,
                                double maturity, ad::Tape& tape, bool with_hessian = false);

// Two names with survivors integrated out through the conditional tails of
// the copula. On the regions where the bilateral payoff vanishes (no default,
// or only name 2) the weight is still computed but flagged unused.
CreditWeight weight_pair_survivor_free(const curves::HazardCurve& c1,
                                       const curves::HazardCurve& c2,
                                       const DefaultSample& sample, const GaussianCopula2& copula,
                                       double maturity, ad::Tape& tape, bool with_hessian = false);

// Bivariate Gaussian copula density at grades, and its log-gradient.
double log_copula_density2(double u1, double u2, double rho);

} // namespace xva::credit
