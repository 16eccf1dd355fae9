#pragma once

#include "painleve_d/symmetry.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <limits>

namespace pd {

using cplx = std::complex<double>;

struct IntegratorConfig {
    double rtol = 1e-10;
    double atol = 1e-12;
    long max_steps = 200000;
    double exclusion_radius = 1e-3;
};

// loop integration for monodromy: eigenvalues of the loop matrix are badly conditioned
// (eigenvector condition around 1e5), so the circle needs a much tighter tolerance than the flow
inline IntegratorConfig monodromy_config() { return {1e-13, 1e-15, 200000, 1e-3}; }

struct SingularSegmentError : std::runtime_error {
    double point;
    SingularSegmentError(const std::string& w, double pt) : std::runtime_error(w), point(pt) {}
};

struct FlowPoleError : std::runtime_error {
    double last_good;
    FlowPoleError(const std::string& w, double s) : std::runtime_error(w), last_good(s) {}
};

// one accepted step with its continuous extension
template <class V>
struct DenseStep {
    double t0 = 0, h = 0;
    std::vector<V> r1, r2, r3, r4, r5;
    std::vector<V> at(double t) const {
        double th = (t - t0) / h, th1 = 1.0 - th;
        std::vector<V> y(r1.size());
        for (size_t i = 0; i < y.size(); ++i)
            y[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
        return y;
    }
};

template <class V>
struct OdeSolution {
    std::vector<double> t;
    std::vector<std::vector<V>> y;
    std::vector<DenseStep<V>> steps;
    long rhs_evals = 0;

    std::vector<V> at(double tq) const {
        if (steps.empty()) {
            if (!t.empty() && tq == t.front()) return y.front();
            throw std::out_of_range("no dense output available");
        }
        const bool fwd = steps.front().h > 0;
        double lo = std::min(t.front(), t.back()), hi = std::max(t.front(), t.back());
        double slack = 1e-12 * std::max(1.0, std::abs(hi));
        if (tq < lo - slack || tq > hi + slack) throw std::out_of_range("dense output queried outside the solved range");
        // binary search over step start times
        size_t a = 0, b = steps.size();
        while (b - a > 1) {
            size_t m = (a + b) / 2;
            bool after = fwd ? tq >= steps[m].t0 : tq <= steps[m].t0;
            if (after) a = m;
            else b = m;
        }
        return steps[a].at(tq);
    }
};

namespace dp {
// Dormand-Prince 5(4) tableau
inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                        a65 = -5103.0 / 18656;
inline constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784,
                        a76 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                        e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                        d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                        d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;
}  // namespace dp

template <class V>
using OdeRhs = std::function<void(double, const std::vector<V>&, std::vector<V>&)>;

// one DP step; returns 5th-order y1, fills k7 (FSAL) and the error estimate vector
template <class V>
struct DpStage {
    std::vector<V> k2, k3, k4, k5, k6, k7, tmp, y1, err;
};

template <class V>
void dp_step(const OdeRhs<V>& f, double t, const std::vector<V>& y, const std::vector<V>& k1, double h,
             DpStage<V>& w) {
    using namespace dp;
    const size_t m = y.size();
    for (auto* v : {&w.k2, &w.k3, &w.k4, &w.k5, &w.k6, &w.k7, &w.tmp, &w.y1, &w.err}) v->resize(m);
    for (size_t i = 0; i < m; ++i) w.tmp[i] = y[i] + h * (a21 * k1[i]);
    f(t + c2 * h, w.tmp, w.k2);
    for (size_t i = 0; i < m; ++i) w.tmp[i] = y[i] + h * (a31 * k1[i] + a32 * w.k2[i]);
    f(t + c3 * h, w.tmp, w.k3);
    for (size_t i = 0; i < m; ++i) w.tmp[i] = y[i] + h * (a41 * k1[i] + a42 * w.k2[i] + a43 * w.k3[i]);
    f(t + c4 * h, w.tmp, w.k4);
    for (size_t i = 0; i < m; ++i)
        w.tmp[i] = y[i] + h * (a51 * k1[i] + a52 * w.k2[i] + a53 * w.k3[i] + a54 * w.k4[i]);
    f(t + c5 * h, w.tmp, w.k5);
    for (size_t i = 0; i < m; ++i)
        w.tmp[i] = y[i] + h * (a61 * k1[i] + a62 * w.k2[i] + a63 * w.k3[i] + a64 * w.k4[i] + a65 * w.k5[i]);
    f(t + h, w.tmp, w.k6);
    for (size_t i = 0; i < m; ++i)
        w.y1[i] = y[i] + h * (a71 * k1[i] + a73 * w.k3[i] + a74 * w.k4[i] + a75 * w.k5[i] + a76 * w.k6[i]);
    f(t + h, w.y1, w.k7);
    for (size_t i = 0; i < m; ++i)
        w.err[i] = h * (e1 * k1[i] + e3 * w.k3[i] + e4 * w.k4[i] + e5 * w.k5[i] + e6 * w.k6[i] + e7 * w.k7[i]);
}

// adaptive integration from t0 to t1 (either direction)
template <class V>
OdeSolution<V> dopri5(const OdeRhs<V>& f, double t0, std::vector<V> y, double t1, const IntegratorConfig& cfg,
                      bool dense = true) {
    using namespace dp;
    OdeSolution<V> sol;
    sol.t.push_back(t0);
    sol.y.push_back(y);
    if (t1 == t0) return sol;
    const double dir = t1 > t0 ? 1.0 : -1.0;
    const size_t m = y.size();
    std::vector<V> k1(m);
    f(t0, y, k1);
    sol.rhs_evals = 1;

    auto scaled_norm = [&](const std::vector<V>& v, const std::vector<V>& ya, const std::vector<V>& yb) {
        double acc = 0;
        for (size_t i = 0; i < m; ++i) {
            double sc = cfg.atol + cfg.rtol * std::max(std::abs(ya[i]), std::abs(yb[i]));
            double r = std::abs(v[i]) / sc;
            acc += r * r;
        }
        return std::sqrt(acc / std::max<size_t>(m, 1));
    };
    // starting step (Hairer's heuristic, simplified)
    double d0 = scaled_norm(y, y, y), d1n = scaled_norm(k1, y, y);
    double h = (d0 < 1e-5 || d1n < 1e-5) ? 1e-6 : 0.01 * d0 / d1n;
    h = std::min(h, std::abs(t1 - t0));
    h *= dir;

    DpStage<V> w;
    double t = t0;
    long steps = 0;
    double facold = 1e-4;
    while (dir * (t1 - t) > 0) {
        if (++steps > cfg.max_steps)
            throw FlowPoleError("step budget exhausted (possible movable pole) after s=" + std::to_string(t), t);
        if (dir * (t + h - t1) > 0) h = t1 - t;
        if (std::abs(h) < 1e-13 * std::max(1.0, std::abs(t)))
            throw FlowPoleError("step size collapsed near s=" + std::to_string(t) + " (movable pole)", t);
        dp_step(f, t, y, k1, h, w);
        sol.rhs_evals += 6;
        double err = scaled_norm(w.err, y, w.y1);
        bool finite = std::isfinite(err);
        for (size_t i = 0; i < m && finite; ++i) finite = std::isfinite(std::abs(w.y1[i])) && std::abs(w.y1[i]) < 1e12;
        if (!finite) {
            h *= 0.2;
            continue;
        }
        if (err <= 1.0) {
            if (dense) {
                DenseStep<V> ds;
                ds.t0 = t;
                ds.h = h;
                ds.r1 = y;
                ds.r2.resize(m);
                ds.r3.resize(m);
                ds.r4.resize(m);
                ds.r5.resize(m);
                for (size_t i = 0; i < m; ++i) {
                    V ydiff = w.y1[i] - y[i];
                    V bspl = h * k1[i] - ydiff;
                    ds.r2[i] = ydiff;
                    ds.r3[i] = bspl;
                    ds.r4[i] = ydiff - h * w.k7[i] - bspl;
                    ds.r5[i] = h * (d1 * k1[i] + d3 * w.k3[i] + d4 * w.k4[i] + d5 * w.k5[i] + d6 * w.k6[i] +
                                    d7 * w.k7[i]);
                }
                sol.steps.push_back(std::move(ds));
            }
            t += h;
            y = w.y1;
            k1 = w.k7;
            sol.t.push_back(t);
            sol.y.push_back(y);
            // PI step control
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5) * std::pow(facold, 0.4 / 5);
            facold = std::max(err, 1e-4);
            h *= std::clamp(fac, 0.2, 5.0);
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
        }
    }
    return sol;
}

// fixed-step DP5 (no error control), used for convergence studies
template <class V>
std::vector<V> dopri5_fixed(const OdeRhs<V>& f, double t0, std::vector<V> y, double t1, int nsteps) {
    double h = (t1 - t0) / nsteps;
    std::vector<V> k1(y.size());
    DpStage<V> w;
    double t = t0;
    for (int i = 0; i < nsteps; ++i) {
        f(t, y, k1);
        dp_step(f, t, y, k1, h, w);
        y = w.y1;
        t = t0 + (i + 1) * h;
    }
    return y;
}

struct Trajectory {
    SystemParams<double> params;
    IntegratorConfig config;
    std::string convention = "as-printed";
    OdeSolution<double> sol;  // y = (q_1..q_n, p_1..p_n)

    int n() const { return params.n; }
    double s_begin() const { return sol.t.front(); }
    double s_end() const { return sol.t.back(); }
    PhaseState<double> state_at(double s) const;
    PhaseState<double> sample(size_t k) const;
    size_t size() const { return sol.t.size(); }
};

// throws SingularSegmentError if [a,b] passes within radius of 0 or 1
void check_segment(double a, double b, double radius);

Trajectory integrate(const PhaseState<double>& start, const SystemParams<double>& prm, double s_end,
                     const IntegratorConfig& cfg = {});

// complex time: polyline through the vertices, each edge parametrized by t in [0,1]
PhaseState<cplx> integrate_path(const PhaseState<cplx>& start, const SystemParams<double>& prm,
                                const std::vector<cplx>& vertices, const IntegratorConfig& cfg = {});

// P_VI constants (a, b, c, d) of the n = 1 reduction, from
// (kappa_0, kappa_1, kappa_t, kappa_inf) = (alpha_4, alpha_3, alpha_1, alpha_0)
template <class T>
std::array<T, 4> p6_constants(const SystemParams<T>& prm) {
    if (prm.n != 1) throw std::invalid_argument("the scalar P_VI reduction needs n = 1");
    const T half = T(1) / T(2);
    const auto& a = prm.alpha;
    return {half * a[0] * a[0], -half * a[4] * a[4], half * a[3] * a[3], half * (T(1) - a[1] * a[1])};
}

// q'' of the scalar sixth Painleve equation
template <class T>
T p6_rhs(const T& q, const T& qd, const T& s, const std::array<T, 4>& k) {
    const T one(1), half = one / T(2);
    T first = half * (one / q + one / (q - one) + one / (q - s)) * qd * qd;
    T second = (one / s + one / (s - one) + one / (q - s)) * qd;
    T pref = q * (q - one) * (q - s) / (s * s * (s - one) * (s - one));
    T inner = k[0] + k[1] * s / (q * q) + k[2] * (s - one) / ((q - one) * (q - one)) +
              k[3] * s * (s - one) / ((q - s) * (q - s));
    return first - second + pref * inner;
}

// q'' of the Hamiltonian system (n = 1) via a dual-number directional derivative of q'
template <class T>
T system_qdd(const PhaseState<T>& st, const SystemParams<T>& prm) {
    HamiltonianSystem<T> hs(prm);
    auto [vq, vp] = hs.unscaled(st);
    PhaseState<Dual<T>> x;
    x.s = Dual<T>(st.s, T(1));
    x.q = {Dual<T>(st.q[0], vq[0])};
    x.p = {Dual<T>(st.p[0], vp[0])};
    HamiltonianSystem<Dual<T>> hd(prm.template cast<Dual<T>>());
    return hd.unscaled(x).first[0].d;
}

struct P6Comparison {
    double max_deviation = 0;
    int samples = 0;
};
P6Comparison p6_oracle_compare(const PhaseState<double>& start, const SystemParams<double>& prm, double s_end,
                               const IntegratorConfig& cfg = {});

// transform-then-integrate vs integrate-then-transform, max deviation over a grid
double backlund_commutation(const WeylToken& g, const PhaseState<double>& start, const SystemParams<double>& prm,
                            double s_end, const IntegratorConfig& cfg = {}, NodeConvention conv = {}, int grid = 21);

// dense M(z) and B(z) at a phase point (double)
Eigen::MatrixXcd dense_at(const LoopMatrix<double>& a, cplx z);
Eigen::MatrixXcd dense_z_derivative(const LoopMatrix<double>& a, cplx z);  // d/dz

// s(s-1) dw/ds = B w along the trajectory
std::vector<cplx> integrate_linear(const std::vector<cplx>& w0, const Trajectory& traj, cplx z, double s_end,
                                   const IntegratorConfig& cfg = {});

// |d/dz(dw/ds) - d/ds(dw/dz)| from the two linear equations at (s, z)
double mixed_derivative_gap(const Trajectory& traj, double s, cplx z, const std::vector<cplx>& w, double gauge = 0.0);

struct MonodromyResult {
    double s = 0;
    double radius = 1;
    int turns = 1;
    Eigen::MatrixXcd matrix;
    std::vector<cplx> eigenvalues;
    cplx determinant;
};

// z dw/dz = -M(z) w around |z| = radius, as dw/dtheta = -i M(z) w
MonodromyResult monodromy_at(const PhaseState<double>& st, const SystemParams<double>& prm, double radius,
                             int turns = 1, double gauge = 0.0, const IntegratorConfig& cfg = {});
std::pair<MonodromyResult, MonodromyResult> monodromy_probe(const Trajectory& traj, double s_a, double s_b,
                                                            double radius, double gauge = 0.0,
                                                            const IntegratorConfig& cfg = {});

// greedy matching distance between two eigenvalue multisets
double multiset_distance(std::vector<cplx> a, std::vector<cplx> b);

// float re-evaluation of the compatibility residual at every accepted step
double trajectory_residual_max(const Trajectory& traj, double gauge = 0.0);

}  // namespace pd
