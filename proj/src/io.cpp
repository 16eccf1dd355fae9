#include "painleve_d/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pd {

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw SchemaError(path + ": not valid JSON (" + e.what() + ")");
    }
}

Rational rational_from_json(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long>());
    if (v.is_string()) {
        try {
            return Rational::parse(v.get<std::string>());
        } catch (const std::exception&) {
            throw SchemaError(where + ": \"" + v.get<std::string>() + "\" is not a rational \"num/den\"");
        }
    }
    throw SchemaError(where + ": expected a rational string \"num/den\"");
}

double double_from_json(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    return rational_from_json(v, where).to_double();
}

static void expect_schema(const json& j, const char* schema) {
    if (!j.is_object()) throw SchemaError(std::string("expected an object with schema ") + schema);
    auto it = j.find("schema");
    if (it == j.end() || !it->is_string() || *it != schema)
        throw SchemaError(std::string("field \"schema\" must be \"") + schema + "\"");
}

static const json& field(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw SchemaError(std::string("missing field \"") + key + "\"");
    return *it;
}

template <class T, class Conv>
static SystemParams<T> params_impl(const json& j, Conv conv) {
    expect_schema(j, kParamsSchema);
    const json& nj = field(j, "n");
    if (!nj.is_number_integer() || nj.get<long>() < 1) throw SchemaError("\"n\" must be a positive integer");
    int n = nj.get<int>();
    const json& a = field(j, "alpha");
    if (!a.is_array() || static_cast<int>(a.size()) != 2 * n + 3)
        throw SchemaError("\"alpha\" must be an array of 2n+3 entries");
    SystemParams<T> prm{n, {}};
    for (size_t k = 0; k < a.size(); ++k) prm.alpha.push_back(conv(a[k], "alpha[" + std::to_string(k) + "]"));
    return prm;
}

SystemParams<Rational> params_from_json(const json& j) { return params_impl<Rational>(j, rational_from_json); }
SystemParams<double> params_from_json_float(const json& j) { return params_impl<double>(j, double_from_json); }

template <class T, class Conv>
static PhaseState<T> state_impl(const json& j, int n, Conv conv) {
    expect_schema(j, kStateSchema);
    PhaseState<T> st;
    st.s = conv(field(j, "s"), "s");
    for (const char* key : {"q", "p"}) {
        const json& v = field(j, key);
        if (!v.is_array() || static_cast<int>(v.size()) != n)
            throw SchemaError(std::string("\"") + key + "\" must be an array of n entries");
        auto& dst = key[0] == 'q' ? st.q : st.p;
        for (size_t k = 0; k < v.size(); ++k) dst.push_back(conv(v[k], std::string(key) + "[" + std::to_string(k) + "]"));
    }
    return st;
}

PhaseState<Rational> state_from_json(const json& j, int n) { return state_impl<Rational>(j, n, rational_from_json); }
PhaseState<double> state_from_json_float(const json& j, int n) { return state_impl<double>(j, n, double_from_json); }

json params_to_json(const SystemParams<Rational>& prm) {
    json a = json::array();
    for (auto& v : prm.alpha) a.push_back(v.str());
    return {{"schema", kParamsSchema}, {"n", prm.n}, {"alpha", a}};
}

json state_to_json(const PhaseState<Rational>& st) {
    json q = json::array(), p = json::array();
    for (auto& v : st.q) q.push_back(v.str());
    for (auto& v : st.p) p.push_back(v.str());
    return {{"schema", kStateSchema}, {"s", st.s.str()}, {"q", q}, {"p", p}};
}

static std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string trajectory_csv(const Trajectory& tr) {
    const int n = tr.n();
    std::ostringstream os;
    os << "s";
    for (int i = 1; i <= n; ++i) os << ",q" << i;
    for (int i = 1; i <= n; ++i) os << ",p" << i;
    os << "\n";
    for (size_t k = 0; k < tr.size(); ++k) {
        os << num(tr.sol.t[k]);
        for (double v : tr.sol.y[k]) os << "," << num(v);
        os << "\n";
    }
    return os.str();
}

json trajectory_json(const Trajectory& tr) {
    json samples = json::array();
    for (size_t k = 0; k < tr.size(); ++k) {
        auto st = tr.sample(k);
        samples.push_back({{"s", st.s}, {"q", st.q}, {"p", st.p}});
    }
    return samples;
}

static json complex_json(cplx z) { return json::array({z.real(), z.imag()}); }

json monodromy_json(const MonodromyResult& m) {
    json rows = json::array(), eig = json::array();
    for (int r = 0; r < m.matrix.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.matrix.cols(); ++c) row.push_back(complex_json(m.matrix(r, c)));
        rows.push_back(row);
    }
    for (auto& e : m.eigenvalues) eig.push_back(complex_json(e));
    return {{"schema", kMonodromySchema}, {"s", m.s}, {"radius", m.radius}, {"turns", m.turns},
            {"matrix", rows}, {"eigenvalues", eig}, {"determinant", complex_json(m.determinant)}};
}

json loop_matrix_json(const LoopMatrix<Rational>& a) {
    json out = json::array();
    for (auto& [d, m] : a.terms())
        for (auto& [k, v] : m.entries())
            out.push_back({{"z_degree", d}, {"row", k.first + 1}, {"col", k.second + 1}, {"value", v.str()}});
    return out;
}

}  // namespace pd
