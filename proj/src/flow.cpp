#include "painleve_d/flow.hpp"

#include <numbers>

namespace pd {

PhaseState<double> Trajectory::state_at(double s) const {
    auto y = sol.at(s);
    const int n = params.n;
    PhaseState<double> st;
    st.s = s;
    st.q.assign(y.begin(), y.begin() + n);
    st.p.assign(y.begin() + n, y.end());
    return st;
}

PhaseState<double> Trajectory::sample(size_t k) const {
    const int n = params.n;
    PhaseState<double> st;
    st.s = sol.t.at(k);
    st.q.assign(sol.y[k].begin(), sol.y[k].begin() + n);
    st.p.assign(sol.y[k].begin() + n, sol.y[k].end());
    return st;
}

void check_segment(double a, double b, double radius) {
    double lo = std::min(a, b), hi = std::max(a, b);
    for (double c : {0.0, 1.0}) {
        double dist = (c < lo) ? lo - c : (c > hi ? c - hi : 0.0);
        if (dist < radius)
            throw SingularSegmentError("segment [" + std::to_string(a) + ", " + std::to_string(b) +
                                           "] reaches the singular point s=" + std::to_string(static_cast<int>(c)),
                                       c);
    }
}

static std::vector<double> pack(const PhaseState<double>& st) {
    std::vector<double> y = st.q;
    y.insert(y.end(), st.p.begin(), st.p.end());
    return y;
}

Trajectory integrate(const PhaseState<double>& start, const SystemParams<double>& prm, double s_end,
                     const IntegratorConfig& cfg) {
    prm.validate();
    if (start.n() != prm.n || static_cast<int>(start.p.size()) != prm.n)
        throw std::invalid_argument("state size does not match n");
    check_segment(start.s, s_end, cfg.exclusion_radius);
    const int n = prm.n;
    HamiltonianSystem<double> hs(prm);
    OdeRhs<double> f = [&](double s, const std::vector<double>& y, std::vector<double>& dy) {
        PhaseState<double> st;
        st.s = s;
        st.q.assign(y.begin(), y.begin() + n);
        st.p.assign(y.begin() + n, y.end());
        auto [dq, dp] = hs.unscaled(st);
        dy.assign(dq.begin(), dq.end());
        dy.insert(dy.end(), dp.begin(), dp.end());
    };
    Trajectory tr;
    tr.params = prm;
    tr.config = cfg;
    tr.sol = dopri5(f, start.s, pack(start), s_end, cfg);
    return tr;
}

static double point_segment_distance(cplx p, cplx a, cplx b) {
    cplx d = b - a;
    double len2 = std::norm(d);
    double t = len2 == 0 ? 0 : std::clamp(std::real((p - a) * std::conj(d)) / len2, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

PhaseState<cplx> integrate_path(const PhaseState<cplx>& start, const SystemParams<double>& prm,
                                const std::vector<cplx>& vertices, const IntegratorConfig& cfg) {
    if (vertices.empty() || vertices.front() != start.s)
        throw std::invalid_argument("path must start at the state's s");
    const int n = prm.n;
    HamiltonianSystem<double> hs(prm);
    PhaseState<cplx> cur = start;
    for (size_t e = 0; e + 1 < vertices.size(); ++e) {
        cplx a = vertices[e], b = vertices[e + 1];
        for (double c : {0.0, 1.0})
            if (point_segment_distance(cplx(c, 0), a, b) < cfg.exclusion_radius)
                throw SingularSegmentError("path edge reaches the singular point s=" + std::to_string(static_cast<int>(c)), c);
        OdeRhs<cplx> f = [&](double t, const std::vector<cplx>& y, std::vector<cplx>& dy) {
            PhaseState<cplx> st;
            st.s = a + t * (b - a);
            st.q.assign(y.begin(), y.begin() + n);
            st.p.assign(y.begin() + n, y.end());
            auto [dq, dp] = hs.unscaled(st);
            dy.resize(2 * n);
            for (int i = 0; i < n; ++i) {
                dy[i] = dq[i] * (b - a);
                dy[n + i] = dp[i] * (b - a);
            }
        };
        std::vector<cplx> y = cur.q;
        y.insert(y.end(), cur.p.begin(), cur.p.end());
        auto sol = dopri5(f, 0.0, y, 1.0, cfg, false);
        cur.s = b;
        cur.q.assign(sol.y.back().begin(), sol.y.back().begin() + n);
        cur.p.assign(sol.y.back().begin() + n, sol.y.back().end());
    }
    return cur;
}

P6Comparison p6_oracle_compare(const PhaseState<double>& start, const SystemParams<double>& prm, double s_end,
                               const IntegratorConfig& cfg) {
    P6Comparison out;
    if (s_end == start.s) return out;
    auto traj = integrate(start, prm, s_end, cfg);
    auto k = p6_constants(prm);
    OdeRhs<double> f = [&](double s, const std::vector<double>& y, std::vector<double>& dy) {
        dy.resize(2);
        dy[0] = y[1];
        dy[1] = p6_rhs(y[0], y[1], s, k);
    };
    auto [vq, vp] = vector_field(start, prm);
    auto scalar = dopri5(f, start.s, std::vector<double>{start.q[0], vq[0]}, s_end, cfg);
    const int grid = 201;
    for (int i = 0; i <= grid; ++i) {
        double s = start.s + (s_end - start.s) * i / grid;
        double d = std::abs(traj.state_at(s).q[0] - scalar.at(s)[0]);
        out.max_deviation = std::max(out.max_deviation, d);
        ++out.samples;
    }
    return out;
}

double backlund_commutation(const WeylToken& g, const PhaseState<double>& start, const SystemParams<double>& prm,
                            double s_end, const IntegratorConfig& cfg, NodeConvention conv, int grid) {
    auto a = integrate(start, prm, s_end, cfg);
    auto moved = apply_generator(g, prm, start, conv);
    auto b = integrate(moved.second, moved.first, s_end, cfg);
    double worst = 0;
    for (int i = 0; i <= grid; ++i) {
        double s = start.s + (s_end - start.s) * i / grid;
        auto img = apply_generator(g, prm, a.state_at(s), conv).second;
        auto other = b.state_at(s);
        for (int j = 0; j < prm.n; ++j) {
            worst = std::max(worst, std::abs(img.q[j] - other.q[j]));
            worst = std::max(worst, std::abs(img.p[j] - other.p[j]));
        }
    }
    return worst;
}

Eigen::MatrixXcd dense_at(const LoopMatrix<double>& a, cplx z) {
    const int N = a.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N, N);
    for (auto& [d, c] : a.terms()) {
        cplx zp = std::pow(z, d);
        for (auto& [k, v] : c.entries()) m(k.first, k.second) += zp * v;
    }
    return m;
}

Eigen::MatrixXcd dense_z_derivative(const LoopMatrix<double>& a, cplx z) {
    const int N = a.size();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N, N);
    for (auto& [d, c] : a.terms()) {
        if (d == 0) continue;
        cplx zp = double(d) * std::pow(z, d - 1);
        for (auto& [k, v] : c.entries()) m(k.first, k.second) += zp * v;
    }
    return m;
}

std::vector<cplx> integrate_linear(const std::vector<cplx>& w0, const Trajectory& traj, cplx z, double s_end,
                                   const IntegratorConfig& cfg) {
    const int N = matrix_size(traj.n());
    if (static_cast<int>(w0.size()) != N) throw std::invalid_argument("w0 must have 4n+4 entries");
    double lo = std::min(traj.s_begin(), traj.s_end()), hi = std::max(traj.s_begin(), traj.s_end());
    if (s_end < lo || s_end > hi) throw std::out_of_range("s_end outside the trajectory (interpolation gap)");
    OdeRhs<cplx> f = [&](double s, const std::vector<cplx>& w, std::vector<cplx>& dw) {
        auto st = traj.state_at(s);
        Eigen::MatrixXcd B = dense_at(build_B(st, traj.params), z);
        Eigen::Map<const Eigen::VectorXcd> wv(w.data(), N);
        Eigen::VectorXcd r = B * wv / (s * (s - 1.0));
        dw.assign(r.data(), r.data() + N);
    };
    auto sol = dopri5(f, traj.s_begin(), w0, s_end, cfg, false);
    return sol.y.back();
}

double mixed_derivative_gap(const Trajectory& traj, double s, cplx z, const std::vector<cplx>& w, double gauge) {
    const int N = matrix_size(traj.n());
    auto ev = solve_epsilon(traj.params, gauge);
    auto Mat = [&](double ss) { return dense_at(build_M(traj.state_at(ss), traj.params, ev), z); };
    auto st = traj.state_at(s);
    auto Bl = build_B(st, traj.params);
    Eigen::MatrixXcd M = Mat(s), B = dense_at(Bl, z), Bz = dense_z_derivative(Bl, z);
    const double h = 1e-5;
    Eigen::MatrixXcd Ms = (Mat(s + h) - Mat(s - h)) / (2 * h);
    Eigen::Map<const Eigen::VectorXcd> wv(w.data(), N);
    const double S = s * (s - 1.0);
    Eigen::VectorXcd ws = B * wv / S, wz = -M * wv / z;
    Eigen::VectorXcd dz_ws = (Bz * wv + B * wz) / S;
    Eigen::VectorXcd ds_wz = -(Ms * wv + M * ws) / z;
    return (dz_ws - ds_wz).cwiseAbs().maxCoeff();
}

MonodromyResult monodromy_at(const PhaseState<double>& st, const SystemParams<double>& prm, double radius, int turns,
                             double gauge, const IntegratorConfig& cfg) {
    if (radius <= 0) throw std::invalid_argument("circle radius must be positive");
    const int N = matrix_size(prm.n);
    auto ev = solve_epsilon(prm, gauge);
    auto M = build_M(st, prm, ev);
    Eigen::MatrixXcd M0 = Eigen::MatrixXcd::Zero(N, N), M1 = M0;
    for (auto& [d, c] : M.terms()) {
        if (d != 0 && d != 1) throw std::logic_error("M has an unexpected z-degree");
        for (auto& [k, v] : c.entries()) (d == 0 ? M0 : M1)(k.first, k.second) += v;
    }
    const cplx I(0, 1);
    OdeRhs<cplx> f = [&](double th, const std::vector<cplx>& y, std::vector<cplx>& dy) {
        cplx z = radius * std::exp(I * th);
        Eigen::Map<const Eigen::MatrixXcd> W(y.data(), N, N);
        Eigen::MatrixXcd r = -I * ((M0 + z * M1) * W);
        dy.assign(r.data(), r.data() + N * N);
    };
    Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(N, N);
    std::vector<cplx> y0(id.data(), id.data() + N * N);
    auto sol = dopri5(f, 0.0, y0, 2 * std::numbers::pi * turns, cfg, false);
    MonodromyResult out;
    out.s = st.s;
    out.radius = radius;
    out.turns = turns;
    out.matrix = Eigen::Map<const Eigen::MatrixXcd>(sol.y.back().data(), N, N);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(out.matrix);
    for (int i = 0; i < N; ++i) out.eigenvalues.push_back(es.eigenvalues()[i]);
    out.determinant = out.matrix.determinant();
    return out;
}

std::pair<MonodromyResult, MonodromyResult> monodromy_probe(const Trajectory& traj, double s_a, double s_b,
                                                            double radius, double gauge, const IntegratorConfig& cfg) {
    return {monodromy_at(traj.state_at(s_a), traj.params, radius, 1, gauge, cfg),
            monodromy_at(traj.state_at(s_b), traj.params, radius, 1, gauge, cfg)};
}

double multiset_distance(std::vector<cplx> a, std::vector<cplx> b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double worst = 0;
    while (!a.empty()) {
        size_t bi = 0, bj = 0;
        double best = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j)
                if (std::abs(a[i] - b[j]) < best) {
                    best = std::abs(a[i] - b[j]);
                    bi = i;
                    bj = j;
                }
        worst = std::max(worst, best);
        a.erase(a.begin() + bi);
        b.erase(b.begin() + bj);
    }
    return worst;
}

double trajectory_residual_max(const Trajectory& traj, double gauge) {
    auto ev = solve_epsilon(traj.params, gauge);
    HamiltonianSystem<double> hs(traj.params);
    double worst = 0;
    for (size_t k = 0; k < traj.size(); ++k) {
        auto st = traj.sample(k);
        auto [dq, dp] = hs.scaled(st);
        worst = std::max(worst, residual_with_rates(st, traj.params, ev, dq, dp).max_abs_entry());
    }
    return worst;
}

}  // namespace pd
