#include "xva/math/normal.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace xva;

TEST_CASE("normal cdf/pdf basics") {
    CHECK(math::norm_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(math::norm_cdf(1.6448536269514722) == doctest::Approx(0.95).epsilon(1e-12));
    CHECK(math::norm_pdf(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    // symmetry
    for (double x : {0.3, 1.7, 4.2}) {
        CHECK(math::norm_cdf(-x) == doctest::Approx(1.0 - math::norm_cdf(x)).epsilon(1e-14));
    }
}

TEST_CASE("normal quantile inverts the cdf to near machine precision") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(1e-12, 1.0 - 1e-12);
    for (int i = 0; i < 1000; ++i) {
        const double p = u(gen);
        const double x = math::norm_quantile(p);
        CHECK(math::norm_cdf(x) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK(math::norm_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK_THROWS(math::norm_quantile(0.0));
    CHECK_THROWS(math::norm_quantile(1.0));
}

TEST_CASE("bivariate normal cdf closed-form checks") {
    // independence
    CHECK(math::binorm_cdf(0.3, -0.7, 0.0) ==
          doctest::Approx(math::norm_cdf(0.3) * math::norm_cdf(-0.7)).epsilon(1e-12));
    // orthant probability at the origin: 1/4 + asin(rho)/(2 pi)
    for (double rho : {-0.95, -0.5, 0.0, 0.3, 0.8, 0.99}) {
        const double expected = 0.25 + std::asin(rho) / (2.0 * M_PI);
        CHECK(math::binorm_cdf(0.0, 0.0, rho) == doctest::Approx(expected).epsilon(1e-10));
    }
    // marginal limit
    CHECK(math::binorm_cdf(0.7, 8.5, 0.4) == doctest::Approx(math::norm_cdf(0.7)).epsilon(1e-9));
    // comonotone / countermonotone limits
    CHECK(math::binorm_cdf(0.4, -0.2, 1.0) ==
          doctest::Approx(math::norm_cdf(-0.2)).epsilon(1e-12));
    CHECK(math::binorm_cdf(0.4, -0.2, -1.0) ==
          doctest::Approx(std::max(0.0, math::norm_cdf(0.4) + math::norm_cdf(-0.2) - 1.0))
              .epsilon(1e-12));
}

TEST_CASE("bivariate normal cdf against monte carlo") {
    std::mt19937_64 gen(42);
    std::normal_distribution<double> z;
    const int n = 2000000;
    for (double rho : {-0.8, 0.5, 0.93}) {
        const double a = 0.337, b = -0.4;
        int hits = 0;
        for (int i = 0; i < n; ++i) {
            const double z1 = z(gen);
            const double z2 = rho * z1 + std::sqrt(1 - rho * rho) * z(gen);
            if (z1 <= a && z2 <= b) ++hits;
        }
        const double p_hat = double(hits) / n;
        const double se = std::sqrt(p_hat * (1 - p_hat) / n);
        CHECK(std::fabs(math::binorm_cdf(a, b, rho) - p_hat) < 4 * se);
    }
}

TEST_CASE("derivative identity of the bivariate cdf") {
    // d/dx Phi2(x,y;rho) = phi(x) Phi((y - rho x)/sqrt(1-rho^2))
    const double rho = 0.6, s = std::sqrt(1 - rho * rho);
    for (double x : {-1.0, 0.2, 1.3}) {
        for (double y : {-0.5, 0.8}) {
            const double h = 1e-6;
            const double fd =
                (math::binorm_cdf(x + h, y, rho) - math::binorm_cdf(x - h, y, rho)) / (2 * h);
            const double an = math::norm_pdf(x) * math::norm_cdf((y - rho * x) / s);
            CHECK(fd == doctest::Approx(an).epsilon(1e-6));
        }
    }
}
