#pragma once

#include "painleve_d/flow.hpp"
#include "painleve_d/heisenberg.hpp"
#include "painleve_d/trials.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace pd {

struct PropertyResult {
    std::string name;
    bool pass = true;
    int trials = 0;
    double measured = 0;        // worst value seen (residual, deviation, order ...)
    std::string counterexample; // first failing trial, empty on success
};

struct SuiteReport {
    std::string suite;
    int n = 1;
    std::uint64_t seed = 0;
    int trials = 0;
    std::string convention;
    std::vector<PropertyResult> properties;
    bool pass() const;
    nlohmann::json to_json() const;
};

struct SuiteOptions {
    int n = 1;
    std::uint64_t seed = 1;
    int trials = 25;
    NodeConvention convention{};
    Rational gauge{0};
    IntegratorConfig integrator{};
    bool parallel = true;
};

const std::vector<std::string>& suite_names();  // algebra ... flow, all
SuiteReport run_suite(const std::string& name, const SuiteOptions& opt);

// smooth, pole-free data on s in [2,3] for the float checks
SystemParams<Rational> flow_params(int n, std::mt19937_64& rng);
PhaseState<Rational> flow_state(int n, std::mt19937_64& rng);

// one entry per acceptance criterion 1..11
struct CriterionResult {
    int id = 0;
    bool pass = false;
    double seconds = 0;
    std::string detail;
};
CriterionResult run_criterion(int id, std::uint64_t seed = 20240611);

}  // namespace pd
