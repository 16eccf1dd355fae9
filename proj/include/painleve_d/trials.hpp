#pragma once

#include "painleve_d/painleve.hpp"

#include <cstdint>
#include <functional>
#include <random>
#include <string>

namespace pd {

// PAINLEVE_D_THREADS, else the OpenMP default
int configured_threads();

// independent stream per (seed, trial, salt)
std::mt19937_64 trial_rng(std::uint64_t seed, int trial, int salt = 0);

// normalized: alpha_0 = 1 - sum_{j>0} m_j alpha_j; every alpha_j nonzero
SystemParams<Rational> random_params(int n, std::mt19937_64& rng);
// s off {0,1}; q distinct and off {0,1,s}; p nonzero
PhaseState<Rational> random_state(int n, std::mt19937_64& rng);

struct TrialResult {
    bool pass = true;
    double value = 0;    // a measured quantity (max residual, deviation, ...)
    std::string detail;  // counterexample or error text
};
using TrialFn = std::function<TrialResult(int)>;

// exceptions inside a trial become failing results
std::vector<TrialResult> run_trials_serial(int count, const TrialFn& f);
std::vector<TrialResult> run_trials_parallel(int count, const TrialFn& f, int threads = 0);

}  // namespace pd
