#include "painleve_d/trials.hpp"

#include <omp.h>

#include <cstdlib>

namespace pd {

int configured_threads() {
    if (const char* env = std::getenv("PAINLEVE_D_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(v);
    }
    return omp_get_max_threads();
}

std::mt19937_64 trial_rng(std::uint64_t seed, int trial, int salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(salt)};
    return std::mt19937_64(seq);
}

static Rational nonzero_rational(std::mt19937_64& rng) {
    for (;;) {
        Rational r = random_rational(rng);
        if (!r.is_zero()) return r;
    }
}

SystemParams<Rational> random_params(int n, std::mt19937_64& rng) {
    if (n < 1) throw std::invalid_argument("n must be >= 1");
    auto m = marks(n);
    for (;;) {
        SystemParams<Rational> prm{n, std::vector<Rational>(2 * n + 3)};
        Rational rest(0);
        for (int j = 1; j < 2 * n + 3; ++j) {
            prm.alpha[j] = nonzero_rational(rng);
            rest += Rational(m[j]) * prm.alpha[j];
        }
        prm.alpha[0] = Rational(1) - rest;
        if (!prm.alpha[0].is_zero()) return prm;
    }
}

PhaseState<Rational> random_state(int n, std::mt19937_64& rng) {
    PhaseState<Rational> st;
    do st.s = random_rational(rng);
    while (st.s.is_zero() || st.s == Rational(1));
    std::vector<Rational> taken{Rational(0), Rational(1), st.s};
    for (int i = 0; i < n; ++i) {
        Rational q;
        bool clash;
        do {
            q = random_rational(rng);
            clash = false;
            for (auto& t : taken) clash = clash || q == t;
        } while (clash);
        taken.push_back(q);
        st.q.push_back(q);
        st.p.push_back(nonzero_rational(rng));
    }
    return st;
}

static TrialResult guarded(const TrialFn& f, int k) {
    try {
        return f(k);
    } catch (const std::exception& e) {
        return {false, 0, e.what()};
    }
}

std::vector<TrialResult> run_trials_serial(int count, const TrialFn& f) {
    std::vector<TrialResult> out(count);
    for (int k = 0; k < count; ++k) out[k] = guarded(f, k);
    return out;
}

std::vector<TrialResult> run_trials_parallel(int count, const TrialFn& f, int threads) {
    std::vector<TrialResult> out(count);
    if (threads <= 0) threads = configured_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (int k = 0; k < count; ++k) out[k] = guarded(f, k);
    return out;
}

}  // namespace pd
