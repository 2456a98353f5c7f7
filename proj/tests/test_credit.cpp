#include "xva/credit/decomposition.hpp"
#include "xva/credit/default_sample.hpp"
#include "xva/credit/weights.hpp"
#include "xva/curves/curve_csv.hpp"
#include "xva/math/normal.hpp"
#include "xva/rng/philox.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace xva;

namespace {

curves::HazardCurve flat_hazard(double lambda) {
    return curves::HazardCurve({"1Y"}, {1.0}, {lambda});
}

curves::HazardCurve load_ba() {
    auto d = curves::load_curve_csv(std::string(XVA_DATA_DIR) + "/INDUSTRIAL_Ba.csv");
    return curves::HazardCurve(d.labels, d.times, d.zeros);
}

} // namespace

TEST_CASE("single-name sampling inverts the trigger exactly") {
    auto c02 = flat_hazard(0.02);
    auto s = credit::sample_default(c02, 10.0, 0.5);
    CHECK_FALSE(s.defaulted[0]); // tau ~ 34.657 > 10
    CHECK(s.trigger[0] == doctest::Approx(std::log(2.0)).epsilon(1e-12));

    auto c2 = flat_hazard(0.2);
    auto s2 = credit::sample_default(c2, 10.0, 0.5);
    CHECK(s2.defaulted[0]);
    CHECK(s2.tau[0] == doctest::Approx(3.4657).epsilon(1e-4));

    // boundary: defaults iff trigger <= Lambda(T) (closed boundary)
    auto ba = load_ba();
    const double uT = 1.0 - std::exp(-ba.cumulative(10.0));
    CHECK(credit::sample_default(ba, 10.0, uT - 1e-12).defaulted[0]);
    CHECK_FALSE(credit::sample_default(ba, 10.0, uT + 1e-12).defaulted[0]);

    // exact inversion over many draws
    rng::PathRng rng(17, 0);
    for (int i = 0; i < 10000; ++i) {
        auto si = credit::sample_default(ba, 10.0, rng.next_uniform());
        if (si.defaulted[0])
            CHECK(std::fabs(ba.cumulative(si.tau[0]) - si.trigger[0]) < 1e-12);
    }
}

TEST_CASE("pair sampling under the gaussian copula") {
    auto c1 = flat_hazard(0.1), c2 = flat_hazard(0.1);

    SUBCASE("independence factorizes joint survival") {
        const credit::GaussianCopula2 cop(0.0);
        const std::size_t n = 100000;
        std::size_t both = 0;
        for (std::size_t p = 0; p < n; ++p) {
            rng::PathRng rng(5, p);
            auto s = credit::sample_default_pair(c1, c2, 10.0, cop, rng.next_normal(),
                                                 rng.next_normal());
            if (!s.defaulted[0] && !s.defaulted[1]) ++both;
        }
        const double expected = std::exp(-1.0) * std::exp(-1.0);
        const double p_hat = double(both) / n;
        const double se = std::sqrt(expected * (1 - expected) / n);
        CHECK(std::fabs(p_hat - expected) < 3 * se);
    }

    SUBCASE("strong dependence is comonotone") {
        const credit::GaussianCopula2 cop(0.999);
        for (std::size_t p = 0; p < 2000; ++p) {
            rng::PathRng rng(6, p);
            auto s = credit::sample_default_pair(c1, c2, 10.0, cop, rng.next_normal(),
                                                 rng.next_normal());
            // identical marginals: grades must be strongly rank-aligned
            CHECK((s.grade[0] - 0.5) * (s.grade[1] - 0.5) >= -0.05);
        }
    }

    SUBCASE("joint default probability matches the bivariate orthant mass") {
        const double rho = 0.5;
        const credit::GaussianCopula2 cop(rho);
        const double udef = 1.0 - std::exp(-1.0);
        const double y = math::norm_quantile(udef);
        const double expected = math::binorm_cdf(y, y, rho);
        const std::size_t n = 200000;
        std::size_t both = 0;
        for (std::size_t p = 0; p < n; ++p) {
            rng::PathRng rng(7, p);
            auto s = credit::sample_default_pair(c1, c2, 10.0, cop, rng.next_normal(),
                                                 rng.next_normal());
            if (s.defaulted[0] && s.defaulted[1]) ++both;
        }
        const double se = std::sqrt(expected * (1 - expected) / n);
        CHECK(std::fabs(double(both) / n - expected) < 4 * se);
    }

    CHECK_THROWS(credit::GaussianCopula2(1.0));
}

TEST_CASE("single censored weight closed forms") {
    ad::Tape tape;
    auto c = flat_hazard(0.02);

    credit::DefaultSample s;
    s.n_names = 1;
    s.defaulted[0] = true;
    s.tau[0] = 3.0;
    s.trigger[0] = 0.06;
    s.grade[0] = 1.0 - std::exp(-0.06);
    auto w = credit::weight_single_censored(c, s, 10.0, tape, true);
    CHECK(w.value == doctest::Approx(-0.06 + std::log(0.02)).epsilon(1e-12));
    CHECK(w.value == doctest::Approx(-3.9720).epsilon(1e-4));
    CHECK(w.grad[0] == doctest::Approx(47.0).epsilon(1e-10)); // -tau + 1/lambda
    CHECK(w.hess(0, 0) == doctest::Approx(-2500.0).epsilon(1e-8));

    credit::DefaultSample surv;
    surv.n_names = 1;
    surv.defaulted[0] = false;
    surv.trigger[0] = 0.5;
    surv.grade[0] = 1.0 - std::exp(-0.5);
    auto w2 = credit::weight_single_censored(c, surv, 10.0, tape, true);
    CHECK(w2.value == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(w2.grad[0] == doctest::Approx(-10.0).epsilon(1e-12));
    CHECK(w2.hess(0, 0) == doctest::Approx(0.0));
}

TEST_CASE("pair copula weight reduces to independent singles at rho = 0") {
    ad::Tape tape, tape2;
    auto c1 = flat_hazard(0.08), c2 = flat_hazard(0.12);
    const credit::GaussianCopula2 cop(0.0);
    rng::PathRng rng(21, 3);
    for (int i = 0; i < 200; ++i) {
        auto s = credit::sample_default_pair(c1, c2, 10.0, cop, rng.next_normal(),
                                             rng.next_normal());
        auto w = credit::weight_pair_copula(c1, c2, s, cop, 10.0, tape, true);

        credit::DefaultSample s1;
        s1.n_names = 1;
        s1.defaulted[0] = s.defaulted[0];
        s1.tau[0] = s.tau[0];
        auto w1 = credit::weight_single_censored(c1, s1, 10.0, tape2);
        credit::DefaultSample s2;
        s2.n_names = 1;
        s2.defaulted[0] = s.defaulted[1];
        s2.tau[0] = s.tau[1];
        auto w2 = credit::weight_single_censored(c2, s2, 10.0, tape2);

        CHECK(w.value == doctest::Approx(w1.value + w2.value).epsilon(1e-11));
        CHECK(w.grad[0] == doctest::Approx(w1.grad[0]).epsilon(1e-11));
        CHECK(w.grad[1] == doctest::Approx(w2.grad[0]).epsilon(1e-11));
        // independent-copula Hessian is block diagonal
        CHECK(w.hess(0, 1) == doctest::Approx(0.0).epsilon(1e-10));
    }
}

TEST_CASE("pair copula weight gradient is symmetric under name swap") {
    ad::Tape tape;
    auto c = flat_hazard(0.1);
    const credit::GaussianCopula2 cop(0.5);
    // symmetric sample: both names defaulted at the same time
    credit::DefaultSample s;
    s.n_names = 2;
    for (int i = 0; i < 2; ++i) {
        s.defaulted[i] = true;
        s.tau[i] = 2.5;
        s.trigger[i] = 0.25;
        s.grade[i] = 1.0 - std::exp(-0.25);
    }
    auto w = credit::weight_pair_copula(c, c, s, cop, 10.0, tape, true);
    CHECK(w.grad[0] == doctest::Approx(w.grad[1]).epsilon(1e-12));
    CHECK(w.hess(0, 0) == doctest::Approx(w.hess(1, 1)).epsilon(1e-10));
}

namespace {

// Test-side closed-form evaluation of the unfrozen censored pair log density
// for single-pillar (constant hazard) curves: pillar time 1, Lambda(t) = l t.
double full_pair_log_density(const credit::DefaultSample& s, double l1, double l2, double rho,
                             double T, double l1_0, double l2_0) {
    const double lam[2] = {l1, l2}, lam0[2] = {l1_0, l2_0};
    double u[2], w = 0;
    for (int i = 0; i < 2; ++i) {
        const double t = s.defaulted[i] ? s.tau[i] : T;
        u[i] = 1.0 - (1.0 - s.grade[i]) * std::exp(lam0[i] * t - lam[i] * t);
        w += -lam[i] * t + (s.defaulted[i] ? std::log(lam[i]) : 0.0);
    }
    return w + credit::log_copula_density2(u[0], u[1], rho);
}

} // namespace

TEST_CASE("frozen-constant gradient equals the gradient of the full log density") {
    ad::Tape tape;
    auto c1 = flat_hazard(0.07), c2 = flat_hazard(0.11);
    const credit::GaussianCopula2 cop(0.45);
    rng::PathRng rng(33, 1);
    for (int i = 0; i < 100; ++i) {
        auto s = credit::sample_default_pair(c1, c2, 10.0, cop, rng.next_normal(),
                                             rng.next_normal());
        auto w = credit::weight_pair_copula(c1, c2, s, cop, 10.0, tape);
        const double h = 1e-7;
        for (int k = 0; k < 2; ++k) {
            const double l1p = 0.07 + (k == 0 ? h : 0.0), l1m = 0.07 - (k == 0 ? h : 0.0);
            const double l2p = 0.11 + (k == 1 ? h : 0.0), l2m = 0.11 - (k == 1 ? h : 0.0);
            const double fd = (full_pair_log_density(s, l1p, l2p, 0.45, 10.0, 0.07, 0.11) -
                               full_pair_log_density(s, l1m, l2m, 0.45, 10.0, 0.07, 0.11)) /
                              (2 * h);
            CHECK(w.grad[k] == doctest::Approx(fd).epsilon(5e-5));
        }
    }
}

TEST_CASE("survivor-free weights reduce correctly at rho = 0") {
    ad::Tape tape, tape2;
    auto c1 = flat_hazard(0.09), c2 = flat_hazard(0.15);
    const credit::GaussianCopula2 cop(0.0);
    rng::PathRng rng(55, 2);
    int seen = 0;
    for (int i = 0; i < 500 && seen != 15; ++i) {
        auto s = credit::sample_default_pair(c1, c2, 10.0, cop, rng.next_normal(),
                                             rng.next_normal());
        auto w = credit::weight_pair_survivor_free(c1, c2, s, cop, 10.0, tape, false);
        if (s.region() == 1u) {
            seen |= 1;
            credit::DefaultSample s1;
            s1.n_names = 1;
            s1.defaulted[0] = true;
            s1.tau[0] = s.tau[0];
            auto w1 = credit::weight_single_censored(c1, s1, 10.0, tape2);
            CHECK(w.used);
            CHECK(w.value == doctest::Approx(w1.value - c2.cumulative(10.0)).epsilon(1e-9));
            CHECK(w.grad[0] == doctest::Approx(w1.grad[0]).epsilon(1e-9));
            CHECK(w.grad[1] == doctest::Approx(-10.0).epsilon(1e-9)); // -dLambda2(T)/dl2
        } else if (s.region() == 0u) {
            seen |= 2;
            CHECK_FALSE(w.used);
            CHECK(w.value ==
                  doctest::Approx(-c1.cumulative(10.0) - c2.cumulative(10.0)).epsilon(1e-9));
        } else if (s.region() == 3u) {
            seen |= 4;
            CHECK(w.used);
        } else {
            seen |= 8;
            CHECK_FALSE(w.used);
        }
    }
    CHECK(seen == 15);
}

TEST_CASE("conditional tail value matches the spec point and brute force") {
    // rho = 0.5, u1 = 0.3, u2 = 0.6
    const double rho = 0.5, u1 = 0.3, u2 = 0.6;
    const double cbar =
        1.0 - math::norm_cdf((math::norm_quantile(u2) - rho * math::norm_quantile(u1)) /
                             std::sqrt(1.0 - rho * rho));
    // brute force: P(U2 > u2 | U1 = u1)
    std::mt19937_64 gen(4);
    std::normal_distribution<double> z;
    const int n = 2000000;
    int hits = 0;
    const double y1 = math::norm_quantile(u1);
    for (int i = 0; i < n; ++i) {
        const double y2 = rho * y1 + std::sqrt(1 - rho * rho) * z(gen);
        if (math::norm_cdf(y2) > u2) ++hits;
    }
    const double p_hat = double(hits) / n;
    CHECK(std::fabs(cbar - p_hat) < 4 * std::sqrt(p_hat * (1 - p_hat) / n));
}

TEST_CASE("zero-mean score at modest path counts") {
    auto ba = load_ba();
    ad::Tape tape;
    const std::size_t n = 50000;

    SUBCASE("single censored") {
        std::vector<double> sums(ba.size(), 0.0), sumsq(ba.size(), 0.0);
        for (std::size_t p = 0; p < n; ++p) {
            rng::PathRng rng(101, p);
            auto s = credit::sample_default(ba, 10.0, rng.next_uniform());
            auto w = credit::weight_single_censored(ba, s, 10.0, tape);
            for (std::size_t k = 0; k < ba.size(); ++k) {
                sums[k] += w.grad[k];
                sumsq[k] += w.grad[k] * w.grad[k];
            }
        }
        for (std::size_t k = 0; k < ba.size(); ++k) {
            const double mean = sums[k] / n;
            const double var = (sumsq[k] - sums[k] * sums[k] / n) / (n - 1);
            if (var == 0.0) continue; // untouched pillars beyond maturity
            CHECK(std::fabs(mean) < 5 * std::sqrt(var / n));
        }
    }

    SUBCASE("pair copula and survivor-free") {
        auto c2curve = flat_hazard(0.05);
        for (double rho : {0.0, 0.5}) {
            const credit::GaussianCopula2 cop(rho);
            const std::size_t m = ba.size() + 1;
            std::vector<double> sums_c(m, 0.0), sq_c(m, 0.0), sums_s(m, 0.0), sq_s(m, 0.0);
            for (std::size_t p = 0; p < n; ++p) {
                rng::PathRng rng(202, p);
                auto s = credit::sample_default_pair(ba, c2curve, 10.0, cop, rng.next_normal(),
                                                     rng.next_normal());
                auto wc = credit::weight_pair_copula(ba, c2curve, s, cop, 10.0, tape);
                auto wsf = credit::weight_pair_survivor_free(ba, c2curve, s, cop, 10.0, tape);
                for (std::size_t k = 0; k < m; ++k) {
                    sums_c[k] += wc.grad[k];
                    sq_c[k] += wc.grad[k] * wc.grad[k];
                    sums_s[k] += wsf.grad[k];
                    sq_s[k] += wsf.grad[k] * wsf.grad[k];
                }
            }
            for (std::size_t k = 0; k < m; ++k) {
                const double mc = sums_c[k] / n;
                const double vc = (sq_c[k] - sums_c[k] * sums_c[k] / n) / (n - 1);
                if (vc > 0) CHECK(std::fabs(mc) < 5 * std::sqrt(vc / n));
                const double ms = sums_s[k] / n;
                const double vs = (sq_s[k] - sums_s[k] * sums_s[k] / n) / (n - 1);
                if (vs > 0) CHECK(std::fabs(ms) < 5 * std::sqrt(vs / n));
            }
        }
    }
}

TEST_CASE("copula density integrates to one") {
    // substitute u = Phi(x): integral of rho(Phi(x), Phi(y)) phi(x) phi(y) over R^2
    const int n = 96;
    std::vector<double> nodes(n), weights(n);
    // Gauss-Legendre on [-8, 8] via Newton iteration on Legendre polynomials
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1, p1 = x;
            for (int j = 2; j <= n; ++j) {
                const double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            const double dp = n * (x * p1 - p0) / (x * x - 1);
            const double dx = p1 / dp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) {
                nodes[i] = x;
                weights[i] = 2.0 / ((1 - x * x) * dp * dp);
                break;
            }
        }
    }
    for (double rho : {0.0, 0.5, -0.8}) {
        double integral = 0;
        for (int i = 0; i < n; ++i) {
            const double x = 8.0 * nodes[i];
            const double u = math::norm_cdf(x);
            for (int j = 0; j < n; ++j) {
                const double y = 8.0 * nodes[j];
                const double v = math::norm_cdf(y);
                const double dens = std::exp(credit::log_copula_density2(u, v, rho));
                integral += 64.0 * weights[i] * weights[j] * dens * math::norm_pdf(x) *
                            math::norm_pdf(y);
            }
        }
        CHECK(integral == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("payoff decomposition by inclusion-exclusion") {
    // one name: addends f_empty and f_{1} - f_empty
    const std::vector<double> f1 = {2.0, 5.0};
    auto a1 = credit::decompose_payoff(f1, 1);
    CHECK(a1[0] == 2.0);
    CHECK(a1[1] == 3.0);

    // two names, f_J = |J|: top addend vanishes
    const std::vector<double> f2 = {0.0, 1.0, 1.0, 2.0};
    auto a2 = credit::decompose_payoff(f2, 2);
    CHECK(a2[3] == doctest::Approx(0.0));

    // three names, random values: exact reconstruction on all 8 regions
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> f(8);
        for (auto& v : f) v = u(gen);
        auto addends = credit::decompose_payoff(f, 3);
        for (unsigned region = 0; region < 8; ++region)
            CHECK(credit::reconstruct_on_region(addends, region) ==
                  doctest::Approx(f[region]).epsilon(1e-12));
    }

    CHECK_THROWS(credit::decompose_payoff(std::vector<double>{1.0, 2.0, 3.0}, 2));
}
