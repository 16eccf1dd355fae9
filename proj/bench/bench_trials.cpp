#include "painleve_d/suites.hpp"

#include <benchmark/benchmark.h>

using namespace pd;

// exact residual trials, the same work serially and through the OpenMP runner
static TrialFn residual_trial(int n) {
    return [n](int k) {
        auto rng = trial_rng(7, k, n);
        auto prm = random_params(n, rng);
        auto st = random_state(n, rng);
        auto R = compatibility_residual(st, prm, solve_epsilon(prm, Rational(0)));
        return TrialResult{R.is_zero_matrix(), 0, ""};
    };
}

static void BM_ResidualSerial(benchmark::State& state) {
    auto f = residual_trial(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_trials_serial(16, f));
}

static void BM_ResidualParallel(benchmark::State& state) {
    auto f = residual_trial(static_cast<int>(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(run_trials_parallel(16, f));
}

BENCHMARK(BM_ResidualSerial)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ResidualParallel)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
