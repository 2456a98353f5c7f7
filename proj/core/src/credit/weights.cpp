#include "xva/credit/weights.hpp"

#include "xva/math/normal.hpp"

#include <cmath>

namespace xva::credit {

using ad::Active;

namespace {

struct PairInputs {
    std::vector<Active> th1, th2;
    std::span<const Active> s1() const { return th1; }
    std::span<const Active> s2() const { return th2; }
};

PairInputs register_pair(const curves::HazardCurve& c1, const curves::HazardCurve& c2,
                         ad::Tape& tape) {
    PairInputs in;
    in.th1.reserve(c1.size());
    in.th2.reserve(c2.size());
    for (double v : c1.zero_intensities()) in.th1.push_back(tape.input(v));
    for (double v : c2.zero_intensities()) in.th2.push_back(tape.input(v));
    return in;
}

// -Lambda(tau^T) + 1{def} log lambda(tau) for one name, censored at maturity.
Active censored_log_density(const curves::HazardCurve& curve, std::span<const Active> theta,
                            bool defaulted, double tau, double maturity) {
    const double t = defaulted ? tau : maturity;
    Active w = -curves::detail::cumulative_hazard<Active>(curve.times(), theta, t);
    if (defaulted)
        w = w + log(curves::detail::hazard_rate<Active>(curve.times(), theta, tau));
    return w;
}

// Taped grade as a function of the pillars, anchored at the sampled value:
// u(theta) = 1 - (1-u) exp(Lambda0 - Lambda(theta)) with Lambda at tau^T.
Active taped_grade(const curves::HazardCurve& curve, std::span<const Active> theta, double grade,
                   bool defaulted, double tau, double maturity) {
    const double t = defaulted ? tau : maturity;
    const double lambda0 = curves::detail::cumulative_hazard<double>(
        curve.times(), curve.zero_intensities(), t);
    const Active lam = curves::detail::cumulative_hazard<Active>(curve.times(), theta, t);
    return 1.0 - (1.0 - grade) * exp(lambda0 - lam);
}

template <class S>
S log_copula_density2_impl(const S& y1, const S& y2, double rho) {
    using std::log;
    const double s2 = 1.0 - rho * rho;
    return -0.5 * ((rho * rho * (y1 * y1 + y2 * y2) - 2.0 * rho * (y1 * y2)) / s2 +
                   std::log(s2));
}

// Unfrozen two-name log density on the censored sample; its Hessian is the
// pure-Gamma ingredient.
Active pair_log_density_full(const curves::HazardCurve& c1, const curves::HazardCurve& c2,
                             const DefaultSample& s, double rho, double maturity,
                             const PairInputs& in) {
    const Active u1 = taped_grade(c1, in.s1(), s.grade[0], s.defaulted[0], s.tau[0], maturity);
    const Active u2 = taped_grade(c2, in.s2(), s.grade[1], s.defaulted[1], s.tau[1], maturity);
    Active w = log_copula_density2_impl<Active>(norm_quantile(u1), norm_quantile(u2), rho);
    w = w + censored_log_density(c1, in.s1(), s.defaulted[0], s.tau[0], maturity);
    w = w + censored_log_density(c2, in.s2(), s.defaulted[1], s.tau[1], maturity);
    return w;
}

} // namespace

double log_copula_density2(double u1, double u2, double rho) {
    return log_copula_density2_impl<double>(math::norm_quantile(u1), math::norm_quantile(u2),
                                            rho);
}

CreditWeight weight_single_censored(const curves::HazardCurve& curve, const DefaultSample& sample,
                                    double maturity, ad::Tape& tape, bool with_hessian) {
    tape.clear();
    std::vector<Active> theta;
    theta.reserve(curve.size());
    for (double v : curve.zero_intensities()) theta.push_back(tape.input(v));
    const Active w =
        censored_log_density(curve, theta, sample.defaulted[0], sample.tau[0], maturity);
    CreditWeight out;
    out.value = w.value();
    out.grad = tape.gradient(w);
    if (with_hessian) {
        out.hess = tape.hessian(w);
        out.has_hessian = true;
    }
    return out;
}

CreditWeight weight_pair_copula(const curves::HazardCurve& c1, const curves::HazardCurve& c2,
                                const DefaultSample& sample, const GaussianCopula2& copula,
                                double maturity, ad::Tape& tape, bool with_hessian) {
    const double rho = copula.rho;
    const double s2 = 1.0 - rho * rho;
    const double y[2] = {math::norm_quantile(sample.grade[0]),
                         math::norm_quantile(sample.grade[1])};
    const double log_rho = log_copula_density2_impl<double>(y[0], y[1], rho);
    XVA_REQUIRE(std::isfinite(log_rho), "pair copula weight: copula density not finite at grades ("
                                            << sample.grade[0] << ", " << sample.grade[1] << ")");

    // d_i = dlog rho/du_i * (1-u_i), held constant under differentiation
    double d[2];
    for (int i = 0; i < 2; ++i) {
        const double dlog_dy = -(rho * rho * y[i] - rho * y[1 - i]) / s2;
        d[i] = dlog_dy / math::norm_pdf(y[i]) * (1.0 - sample.grade[i]);
    }

    tape.clear();
    const PairInputs in = register_pair(c1, c2, tape);
    const curves::HazardCurve* curves2[2] = {&c1, &c2};
    std::span<const Active> th[2] = {in.s1(), in.s2()};

    Active w = tape.constant(log_rho);
    for (int i = 0; i < 2; ++i) {
        const double t = sample.defaulted[i] ? sample.tau[i] : maturity;
        const Active lam =
            curves::detail::cumulative_hazard<Active>(curves2[i]->times(), th[i], t);
        w = w + (d[i] - 1.0) * lam;
        if (sample.defaulted[i])
            w = w + log(curves::detail::hazard_rate<Active>(curves2[i]->times(), th[i],
                                                            sample.tau[i]));
    }

    CreditWeight out;
    out.value = w.value();
    out.grad = tape.gradient(w);

    if (with_hessian) {
        tape.clear();
        const PairInputs full = register_pair(c1, c2, tape);
        const Active wf = pair_log_density_full(c1, c2, sample, rho, maturity, full);
        out.hess = tape.hessian(wf);
        out.has_hessian = true;
    }
    return out;
}

CreditWeight weight_pair_survivor_free(const curves::HazardCurve& c1,
                                       const curves::HazardCurve& c2,
                                       const DefaultSample& sample, const GaussianCopula2& copula,
                                       double maturity, ad::Tape& tape, bool with_hessian) {
    const double rho = copula.rho;
    const double sq = std::sqrt(1.0 - rho * rho);

    tape.clear();
    const PairInputs in = register_pair(c1, c2, tape);

    const auto grade_at_t = [&](int i, double t) {
        const auto& curve = (i == 0) ? c1 : c2;
        const auto th = (i == 0) ? in.s1() : in.s2();
        return 1.0 - exp(-curves::detail::cumulative_hazard<Active>(curve.times(), th, t));
    };
    const auto defaulted_leg = [&](int i) {
        const auto& curve = (i == 0) ? c1 : c2;
        const auto th = (i == 0) ? in.s1() : in.s2();
        return censored_log_density(curve, th, true, sample.tau[i], maturity);
    };
    // P(U_j > u_j(T) | U_i = u_i) for the Gaussian copula
    const auto conditional_tail = [&](const Active& u_surv_T, const Active& u_def) {
        return 1.0 - norm_cdf((norm_quantile(u_surv_T) - rho * norm_quantile(u_def)) / sq);
    };

    CreditWeight out;
    Active w = tape.constant(0.0);
    switch (sample.region()) {
        case 3u: { // both defaulted: full copula density, indicator tail
            const Active u1 = grade_at_t(0, sample.tau[0]);
            const Active u2 = grade_at_t(1, sample.tau[1]);
            w = log_copula_density2_impl<Active>(norm_quantile(u1), norm_quantile(u2), rho) +
                defaulted_leg(0) + defaulted_leg(1);
            break;
        }
        case 1u: { // name 1 defaulted, name 2 integrated out
            w = defaulted_leg(0) +
                log(conditional_tail(grade_at_t(1, maturity), grade_at_t(0, sample.tau[0])));
            break;
        }
        case 2u: { // mirror case; the bilateral payoff is zero here
            w = defaulted_leg(1) +
                log(conditional_tail(grade_at_t(0, maturity), grade_at_t(1, sample.tau[1])));
            out.used = false;
            break;
        }
        case 0u: { // joint survival through the bivariate tail
            const Active u1 = grade_at_t(0, maturity);
            const Active u2 = grade_at_t(1, maturity);
            const Active surv =
                1.0 - u1 - u2 + binorm_cdf(norm_quantile(u1), norm_quantile(u2), rho);
            w = log(surv);
            out.used = false;
            break;
        }
        default:
            XVA_REQUIRE(false, "weight_pair_survivor_free: invalid region");
    }

    out.value = w.value();
    out.grad = tape.gradient(w);
    if (with_hessian) {
        out.hess = tape.hessian(w);
        out.has_hessian = true;
    }
    return out;
}

} // namespace xva::credit
