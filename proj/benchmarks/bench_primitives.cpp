#include "xva/ad/scalar.hpp"
#include "xva/math/normal.hpp"
#include "xva/rng/philox.hpp"

#include <benchmark/benchmark.h>

using namespace xva;

namespace {

void NormQuantile(benchmark::State& state) {
    double u = 0.0001;
    for (auto _ : state) {
        benchmark::DoNotOptimize(math::norm_quantile(u));
        u += 1e-4;
        if (u >= 1.0) u = 0.0001;
    }
}

void BinormCdf(benchmark::State& state) {
    const double rho = 0.01 * double(state.range(0));
    double x = -3.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(math::binorm_cdf(x, -x, rho));
        x += 1e-3;
        if (x > 3.0) x = -3.0;
    }
}

void PhiloxNormal(benchmark::State& state) {
    rng::PathRng rng(1, 1);
    for (auto _ : state) benchmark::DoNotOptimize(rng.next_normal());
}

void TapeGradient(benchmark::State& state) {
    // representative weight-sized tape: cumulative hazard + log hazard
    ad::Tape tape;
    const std::size_t n = state.range(0);
    std::vector<double> lam(n, 0.03);
    for (auto _ : state) {
        tape.clear();
        std::vector<ad::Active> th;
        th.reserve(n);
        for (double v : lam) th.push_back(tape.input(v));
        ad::Active w = th[0] * 0.7;
        for (std::size_t j = 1; j < n; ++j) w = w + th[j] * (0.5 + 0.1 * j);
        w = -w + log(th[n / 2] * 2.0);
        benchmark::DoNotOptimize(tape.gradient(w));
    }
}

} // namespace

BENCHMARK(NormQuantile);
BENCHMARK(BinormCdf)->Arg(30)->Arg(95);
BENCHMARK(PhiloxNormal);
BENCHMARK(TapeGradient)->Arg(10)->Arg(62);
