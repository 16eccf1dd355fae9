#pragma once

#include "painleve_d/flow.hpp"

#include <json.hpp>

#include <string>

namespace pd {

using json = nlohmann::json;

struct SchemaError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline constexpr const char* kParamsSchema = "painleve-d/params/v1";
inline constexpr const char* kStateSchema = "painleve-d/state/v1";
inline constexpr const char* kTrajectorySchema = "painleve-d/trajectory/v1";
inline constexpr const char* kMonodromySchema = "painleve-d/monodromy/v1";
inline constexpr const char* kLaxSchema = "painleve-d/lax/v1";
inline constexpr const char* kWeylSchema = "painleve-d/weyl/v1";

json read_json_file(const std::string& path);

// exact: "num/den" strings or JSON integers; anything else is a schema error
Rational rational_from_json(const json& v, const std::string& where);
// float paths also take JSON numbers
double double_from_json(const json& v, const std::string& where);

SystemParams<Rational> params_from_json(const json& j);
SystemParams<double> params_from_json_float(const json& j);
PhaseState<Rational> state_from_json(const json& j, int n);
PhaseState<double> state_from_json_float(const json& j, int n);

json params_to_json(const SystemParams<Rational>& prm);
json state_to_json(const PhaseState<Rational>& st);

std::string trajectory_csv(const Trajectory& tr);
json trajectory_json(const Trajectory& tr);
json monodromy_json(const MonodromyResult& m);
// {z_degree, row, col, value} with 1-based row/col
json loop_matrix_json(const LoopMatrix<Rational>& a);

}  // namespace pd
