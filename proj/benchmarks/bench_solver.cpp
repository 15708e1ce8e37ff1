#include <benchmark/benchmark.h>

#include "cbvp/verification.hpp"

namespace {

using namespace cbvp;

Manufactured smooth_case(std::size_t n) {
    CoefficientSet cs;
    cs.set(0, 0, Coefficient(expr::parse("1 + step(x1 - 0.5)")));
    cs.set(3, 2, Coefficient(expr::parse("sin(x1 + x2)")));
    cs.set(4, 1, Coefficient(expr::parse("0.5")));
    const Domain dom = Domain::make(1.0, 1.0);
    return manufacture(MmsCase{expr::parse("sin(x1)*exp(x2)"), cs, dom}, TensorGrid::uniform(dom, n, n));
}

void BM_Solve(benchmark::State& state, Method method) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Manufactured m = smooth_case(n);
    const TensorGrid grid = m.exact.grid();
    SolverOptions opts;
    opts.method = method;
    for (auto _ : state) benchmark::DoNotOptimize(solve(m.problem, grid, opts));
    state.SetComplexityN(state.range(0));
}
BENCHMARK_CAPTURE(BM_Solve, marching, Method::Marching)->RangeMultiplier(2)->Range(16, 128)->Complexity();
BENCHMARK_CAPTURE(BM_Solve, picard, Method::Picard)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_KernelApplyAll(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Domain dom = Domain::make(1.0, 1.0);
    GridFunction2D v(TensorGrid::uniform(dom, n, n), 1.0);
    for (auto _ : state) benchmark::DoNotOptimize(kernel_apply_all(v, dom));
    state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KernelApplyAll)->RangeMultiplier(2)->Range(16, 128)->Complexity();

void BM_DataJet(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Manufactured m = smooth_case(n);
    for (auto _ : state) benchmark::DoNotOptimize(data_jet(m.problem.data, m.problem.dom, m.exact.grid()));
}
BENCHMARK(BM_DataJet)->RangeMultiplier(2)->Range(16, 128);

void BM_RoundTrip(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const Domain dom = Domain::make(1.0, 1.0);
    const TensorGrid grid = TensorGrid::uniform(dom, n, n);
    const ClassicalData cd = sample_classical_from_field(expr::parse("sin(x1)*exp(x2) + x1^5*x2^6"), dom);
    for (auto _ : state) {
        benchmark::DoNotOptimize(nonclassical_to_classical(classical_to_nonclassical(cd, dom.h1, 1e-9), dom, grid));
    }
}
BENCHMARK(BM_RoundTrip)->Arg(33)->Arg(65)->Arg(129);

}  // namespace

BENCHMARK_MAIN();
