#pragma once

#include "painleve_d/io.hpp"
#include "painleve_d/suites.hpp"

#include <doctest.h>

namespace pdtest {

using namespace pd;
using R = Rational;

inline R r(long a, long b = 1) { return R(a, b); }

inline SystemParams<R> uniform_params(int n) {
    // marks sum to 4n+2
    return {n, std::vector<R>(2 * n + 3, R(1, 4 * n + 2))};
}

inline PhaseState<R> state(R s, std::vector<R> q, std::vector<R> p) { return {s, std::move(q), std::move(p)}; }

inline std::string data_path(const std::string& name) { return std::string(PD_DATA_DIR) + "/" + name; }

inline void check_report(const SuiteReport& rep) {
    for (auto& p : rep.properties) {
        INFO(rep.suite << " n=" << rep.n << " " << p.name << ": " << p.counterexample);
        CHECK(p.pass);
    }
}

}  // namespace pdtest
