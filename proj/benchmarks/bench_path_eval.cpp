#include "xva/curves/curve_csv.hpp"
#include "xva/greeks/cva_problem.hpp"

#include <benchmark/benchmark.h>

using namespace xva;

namespace {

greeks::CvaProblem desk_problem(int steps_per_period) {
    auto r = curves::load_curve_csv(std::string(XVA_DATA_DIR) + "/ESTR.csv");
    auto c = curves::load_curve_csv(std::string(XVA_DATA_DIR) + "/INDUSTRIAL_Ba.csv");
    greeks::CvaSetup setup{
        hw::HullWhiteModel{0.0744, 0.0125, curves::ZeroCurve(r.labels, r.times, r.zeros)},
        hw::SwapSpec{},
        curves::HazardCurve(c.labels, c.times, c.zeros),
        std::nullopt,
        0.0,
        0.6,
        payoff::CvaMode::unilateral,
        payoff::Discounting::curve,
        greeks::PairWeightKind::copula,
        steps_per_period};
    return greeks::CvaProblem(std::move(setup));
}

void bench_eval(benchmark::State& state, greeks::EvalMode mode) {
    const auto problem = desk_problem(int(state.range(0)));
    greeks::Workspace ws;
    greeks::PathOutputs out;
    std::uint64_t path = 0;
    for (auto _ : state) {
        problem.eval_path(1, path++, mode, ws, out);
        benchmark::DoNotOptimize(out.f);
    }
}

void PathValue(benchmark::State& state) { bench_eval(state, greeks::EvalMode::value); }
void PathFirstOrder(benchmark::State& state) { bench_eval(state, greeks::EvalMode::first_order); }
void PathSecondOrder(benchmark::State& state) {
    bench_eval(state, greeks::EvalMode::second_order);
}
void PathDistributional(benchmark::State& state) {
    bench_eval(state, greeks::EvalMode::distributional);
}

} // namespace

BENCHMARK(PathValue)->Arg(1)->Arg(12);
BENCHMARK(PathFirstOrder)->Arg(1)->Arg(12);
BENCHMARK(PathSecondOrder)->Arg(12);
BENCHMARK(PathDistributional)->Arg(12);

BENCHMARK_MAIN();
