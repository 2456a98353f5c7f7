#include "xva/greeks/cva_problem.hpp"
#include "xva/curves/curve_csv.hpp"

#include <doctest.h>

#include <cmath>

using namespace xva;
using ad::Active;

namespace {

const std::string data_dir = XVA_DATA_DIR;

greeks::CvaSetup desk_setup() {
    auto r = curves::load_curve_csv(data_dir + "/ESTR.csv");
    auto c = curves::load_curve_csv(data_dir + "/INDUSTRIAL_Ba.csv");
    return greeks::CvaSetup{
        hw::HullWhiteModel{0.0744, 0.0125, curves::ZeroCurve(r.labels, r.times, r.zeros)},
        hw::SwapSpec{1e8, 0.00947, 10, 1.0, true},
        curves::HazardCurve(c.labels, c.times, c.zeros),
        std::nullopt,
        0.0,
        0.6,
        payoff::CvaMode::unilateral,
        payoff::Discounting::curve,
        greeks::PairWeightKind::copula};
}

struct Fixture {
    greeks::CvaProblem problem{desk_setup()};
    std::vector<double> x, jp;

    void sample(std::uint64_t seed, std::uint64_t path) {
        rng::PathRng rng(seed, path);
        problem.sample_states(rng, x, jp);
    }
    hw::PricingContext<double> ctx() const {
        return problem.context<double>(problem.setup().model.curve.zeros(), x, jp);
    }
};

} // namespace

TEST_CASE("payoff arithmetic and zero cases") {
    Fixture fix;
    fix.sample(1, 0);
    const auto& pay = payoff::CvaPayoff{0.6, 10.0, payoff::CvaMode::unilateral};

    // survived path: indicator kills the payoff without touching the NPV
    credit::DefaultSample surv;
    surv.n_names = 1;
    surv.defaulted[0] = false;
    CHECK(payoff::evaluate<double>(pay, surv, fix.ctx(), 0.0) == 0.0);

    // defaulted path: f = -lgd D(0,tau) max(NPV,0), checked against the pieces
    int checked_itm = 0, checked_otm = 0;
    for (std::uint64_t p = 0; p < 200; ++p) {
        fix.sample(3, p);
        rng::PathRng rng(909, p);
        auto s = credit::sample_default(fix.problem.setup().hazard1, 10.0, rng.next_uniform());
        if (!s.defaulted[0]) continue;
        const auto ctx = fix.ctx();
        const double f = payoff::evaluate<double>(pay, s, ctx, s.tau[0]);
        const double npv = ctx.npv(s.tau[0]);
        const double d = fix.problem.setup().model.curve.discount(s.tau[0]);
        CHECK(f == -0.6 * (d * std::max(npv, 0.0)));
        if (npv > 0)
            ++checked_itm;
        else {
            CHECK(f == 0.0);
            ++checked_otm;
        }
    }
    CHECK(checked_itm > 0);
    CHECK(checked_otm > 0);

    // spec magnitude: NPV = 1M, D = 0.95, lgd = 0.6 -> -570,000
    CHECK(-0.6 * 0.95 * 1.0e6 == doctest::Approx(-570000.0));
}

TEST_CASE("payoff jumps match two-sided evaluation") {
    Fixture fix;
    const payoff::CvaPayoff pay{0.6, 10.0, payoff::CvaMode::unilateral};
    for (std::uint64_t p : {2ull, 11ull, 19ull}) {
        fix.sample(12, p);
        const auto ctx = fix.ctx();
        const auto jumps = payoff::jumps_at(pay, ctx);
        REQUIRE(jumps.size() == 10);
        const double eps = 1e-9;
        for (int k = 0; k < 10; ++k) {
            const double date = ctx.swap->payment_date(k);
            credit::DefaultSample s;
            s.n_names = 1;
            s.defaulted[0] = true;
            s.tau[0] = date - eps;
            const double f_minus = payoff::evaluate<double>(pay, s, ctx, s.tau[0]);
            s.tau[0] = std::min(date + eps, 10.0);
            double f_plus = payoff::evaluate<double>(pay, s, ctx, s.tau[0]);
            if (k == 9) { // past maturity the trigger is off
                s.defaulted[0] = false;
                f_plus = 0.0;
            }
            CHECK(jumps[k] == doctest::Approx(f_plus - f_minus).epsilon(1e-5));
        }
        // piecewise continuity away from payment dates
        credit::DefaultSample s;
        s.n_names = 1;
        s.defaulted[0] = true;
        s.tau[0] = 4.37;
        const double a = payoff::evaluate<double>(pay, s, ctx, 4.37);
        s.tau[0] = 4.37 + 1e-8;
        const double b = payoff::evaluate<double>(pay, s, ctx, 4.37 + 1e-8);
        CHECK(std::fabs(a - b) < 1.0);
    }
}

TEST_CASE("jumps vanish when both sides are out of the money") {
    Fixture fix;
    fix.sample(1, 0);
    // push the factor very high: receiver swap deep out of the money
    std::fill(fix.x.begin(), fix.x.end(), 0.25);
    for (std::size_t i = 0; i < fix.jp.size(); ++i)
        fix.jp[i] = 0.25 * fix.problem.scheme().times()[i];
    const payoff::CvaPayoff pay{0.6, 10.0, payoff::CvaMode::unilateral};
    const auto jumps = payoff::jumps_at(pay, fix.ctx());
    for (int k = 0; k < 9; ++k) CHECK(jumps[k] == 0.0);
}

TEST_CASE("bilateral indicator") {
    payoff::CvaPayoff pay{0.6, 10.0, payoff::CvaMode::bilateral};
    credit::DefaultSample s;
    s.n_names = 2;
    s.defaulted = {true, true};
    s.tau = {3.0, 5.0};
    CHECK(pay.triggered(s)); // counterparty first
    s.tau = {5.0, 3.0};
    CHECK_FALSE(pay.triggered(s)); // own default first
    s.defaulted = {true, false};
    s.tau = {5.0, 0.0};
    CHECK(pay.triggered(s)); // name 2 survives past maturity
    s.defaulted = {false, true};
    CHECK_FALSE(pay.triggered(s));
}

TEST_CASE("path-wise rate gradient matches finite differences") {
    Fixture fix;
    const payoff::CvaPayoff pay{0.6, 10.0, payoff::CvaMode::unilateral};
    const auto& zc = fix.problem.setup().model.curve;
    int tested = 0;
    for (std::uint64_t p = 0; p < 400 && tested < 60; ++p) {
        fix.sample(31, p);
        rng::PathRng rng(871, p);
        auto s = credit::sample_default(fix.problem.setup().hazard1, 10.0, rng.next_uniform());
        if (!s.defaulted[0]) continue;
        const auto ctx = fix.ctx();
        const double f0 = payoff::evaluate<double>(pay, s, ctx, s.tau[0]);
        // a 1e-6 zero-rate bump moves the NPV by O(1e3) EUR at this notional,
        // so stay far enough from the kink that the bump cannot cross it
        if (std::fabs(ctx.npv(s.tau[0])) < 5e3) continue;
        if (f0 == 0.0) continue;
        ++tested;

        // taped gradient
        ad::Tape tape;
        std::vector<Active> zeros_a, x_a, dj_a;
        for (double v : zc.zeros()) zeros_a.push_back(tape.input(v));
        for (double v : fix.x) x_a.push_back(tape.constant(v));
        for (double v : fix.jp) dj_a.push_back(tape.constant(v));
        auto ctx_a = fix.problem.context<Active>(zeros_a, x_a, dj_a);
        const Active f_a = payoff::cva_loss(pay, ctx_a, tape.constant(s.tau[0]));
        CHECK(f_a.value() == f0); // taped value reproduces plain evaluation exactly
        const auto g = tape.gradient(f_a);

        // central differences on the pillars the trade can touch
        std::vector<double> zeros(zc.zeros().begin(), zc.zeros().end());
        for (std::size_t i = 0; i < zeros.size(); i += 7) {
            const double h = 1e-6;
            std::vector<double> up = zeros, dn = zeros;
            up[i] += h;
            dn[i] -= h;
            curves::ZeroCurve cu(zc.labels(), {zc.times().begin(), zc.times().end()}, up);
            curves::ZeroCurve cd(zc.labels(), {zc.times().begin(), zc.times().end()}, dn);
            auto ctx_u = fix.problem.context<double>(cu.zeros(), fix.x, fix.jp);
            auto ctx_d = fix.problem.context<double>(cd.zeros(), fix.x, fix.jp);
            const double fd = (payoff::evaluate<double>(pay, s, ctx_u, s.tau[0]) -
                               payoff::evaluate<double>(pay, s, ctx_d, s.tau[0])) /
                              (2 * h);
            // second term is the finite-difference roundoff floor: the payoff
            // is O(1e6), so differences below |f| eps / h are unresolvable
            const double tol = 1e-4 * std::max(1.0, std::fabs(fd)) +
                               1e-14 * std::fabs(f0) / h;
            CHECK(std::fabs(g[i] - fd) < tol);
        }
    }
    CHECK(tested >= 30);
}

TEST_CASE("payoff has no credit sensitivity on its tape") {
    Fixture fix;
    fix.sample(77, 5);
    const payoff::CvaPayoff pay{0.6, 10.0, payoff::CvaMode::unilateral};
    rng::PathRng rng(500, 5);
    credit::DefaultSample s;
    do {
        s = credit::sample_default(fix.problem.setup().hazard1, 10.0, rng.next_uniform());
    } while (!s.defaulted[0]);

    ad::Tape tape;
    // register hazard pillars first: if the payoff touched them, their
    // adjoints would be nonzero
    std::vector<Active> hazard_inputs;
    for (double v : fix.problem.setup().hazard1.zero_intensities())
        hazard_inputs.push_back(tape.input(v));
    std::vector<Active> zeros_a, x_a, dj_a;
    for (double v : fix.problem.setup().model.curve.zeros()) zeros_a.push_back(tape.input(v));
    for (double v : fix.x) x_a.push_back(tape.constant(v));
    for (double v : fix.jp) dj_a.push_back(tape.constant(v));
    auto ctx_a = fix.problem.context<Active>(zeros_a, x_a, dj_a);
    const Active f_a = payoff::cva_loss(pay, ctx_a, tape.constant(s.tau[0]));
    const auto g = tape.gradient(f_a);
    for (std::size_t k = 0; k < hazard_inputs.size(); ++k) CHECK(g[k] == 0.0);
}
