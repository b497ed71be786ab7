#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "idde/idde.hpp"

namespace {

using namespace idde;

ProblemSpec delayed_impulsive_spec(int impulses) {
    ProblemSpec spec;
    spec.terms.push_back({FunctionDescriptor::constant(1.0),
                          DeviationDescriptor::constant_lag(1.0 / 3.0)});
    spec.initial_value = 1.0;
    std::vector<double> pts, mult;
    for (int j = 1; j <= impulses; ++j) {
        pts.push_back(static_cast<double>(j) / 3.0);
        mult.push_back(1.0 / 6.0);
    }
    spec.impulses = ImpulseSchedule::make(pts, mult);
    return spec;
}

ProblemSpec ode_spec(int impulses) {
    ProblemSpec spec;
    spec.terms.push_back({FunctionDescriptor::constant(0.4),
                          DeviationDescriptor::constant_lag(0.0)});
    spec.initial_value = 1.0;
    std::vector<double> pts, mult;
    for (int j = 1; j <= impulses; ++j) {
        pts.push_back(0.5 * static_cast<double>(j));
        mult.push_back(1.2);
    }
    spec.impulses = ImpulseSchedule::make(pts, mult);
    return spec;
}

void BM_Solve(benchmark::State& state) {
    ProblemSpec spec = delayed_impulsive_spec(15);
    for (auto _ : state) {
        auto sol = solve(spec, 5.0, {1e-3, 3});
        benchmark::DoNotOptimize(sol.values().back());
    }
}
BENCHMARK(BM_Solve);

void BM_FundamentalColumn(benchmark::State& state) {
    ProblemSpec spec = delayed_impulsive_spec(15);
    for (auto _ : state) {
        auto col = fundamental_function(spec, 1.0, 5.0, {1e-3, 3});
        benchmark::DoNotOptimize(col.values().back());
    }
}
BENCHMARK(BM_FundamentalColumn);

// Exponential chain enumeration vs the polynomial layer recursion, impulse
// count on the x axis.
void BM_ExpansionEnumeration(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    ProblemSpec spec = ode_spec(n);
    double horizon = 0.5 * n + 0.5;
    CauchyEvaluator C(spec, horizon, {1e-2, 3});
    double t = 0.5 * n + 0.25;
    expansion_G(C, spec.impulses, t, 0.1);  // warm the column cache
    for (auto _ : state)
        benchmark::DoNotOptimize(expansion_G(C, spec.impulses, t, 0.1));
}
BENCHMARK(BM_ExpansionEnumeration)->DenseRange(2, 14, 4);

void BM_RecursionLayers(benchmark::State& state) {
    int n = static_cast<int>(state.range(0));
    ProblemSpec spec = ode_spec(n);
    double horizon = 0.5 * n + 0.5;
    CauchyEvaluator C(spec, horizon, {1e-2, 3});
    double t = 0.5 * n + 0.25;
    recursion_G(C, spec.impulses, t, 0.1);
    for (auto _ : state)
        benchmark::DoNotOptimize(recursion_G(C, spec.impulses, t, 0.1));
}
BENCHMARK(BM_RecursionLayers)->DenseRange(2, 14, 4);

}  // namespace

BENCHMARK_MAIN();
