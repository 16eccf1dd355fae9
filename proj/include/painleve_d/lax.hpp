#pragma once

#include "painleve_d/linalg.hpp"
#include "painleve_d/painleve.hpp"

namespace pd {

struct PairingInconsistentError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Rational building blocks shared by M and B for a given n.
struct LaxFrame {
    int n = 0;
    LoopMatrix<Rational> cross;             // sum_{i=1}^{2n}[E_i,E_{i+1}] + [E_{2n},E_{2n+2}]
    LoopMatrix<Rational> e02;               // [E_0,E_2]
    std::vector<LoopMatrix<Rational>> eii;  // eii[i] = [E_i,E_{i+1}], i = 1..2n
    LoopMatrix<Rational> e2n_2n2;           // [E_{2n},E_{2n+2}]
    LoopMatrix<Rational> triples;           // sum over j in {3,5,..,2n-1} of [E_{j-1},[E_j,E_{j+1}]]
};
const LaxFrame& lax_frame(int n);

// out += c * g
template <class T>
void accumulate(LoopMatrix<T>& out, const LoopMatrix<Rational>& g, const T& c) {
    if (is_zero(c)) return;
    for (auto& [d, m] : g.terms())
        for (auto& [k, v] : m.entries()) out.add(d, k.first, k.second, from_rational<T>(v) * c);
}

template <class T>
struct EpsilonVector {
    std::vector<T> eps;  // eps_0..eps_{2n+2}
    T gauge{};
};

// A eps = alpha - delta_0 with eps_0 = gauge
template <class T>
EpsilonVector<T> solve_epsilon(const SystemParams<T>& prm, const T& gauge = T(0)) {
    prm.validate();
    if constexpr (ScalarTraits<T>::exact) {
        if (!prm.normalized()) throw std::invalid_argument("parameters are not normalized (marks . alpha != 1)");
    } else {
        if (magnitude(prm.marks_sum() - T(1)) > 1e-9) throw std::invalid_argument("parameters are not normalized");
    }
    const int n = prm.n, m = 2 * n + 3;
    auto A = cartan_matrix(n);
    // unknowns eps_1..eps_{2n+2}; all 2n+3 equations kept, row 0 is redundant
    std::vector<std::vector<T>> rows(m, std::vector<T>(m - 1, T(0)));
    std::vector<T> rhs(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 1; j < m; ++j) rows[i][j - 1] = T(A[i][j]);
        rhs[i] = prm.alpha[i] - (i == 0 ? T(1) : T(0)) - T(A[i][0]) * gauge;
    }
    auto sol = solve_linear(rows, rhs, 1e-9);
    EpsilonVector<T> out;
    out.gauge = gauge;
    out.eps.push_back(gauge);
    out.eps.insert(out.eps.end(), sol.begin(), sol.end());
    return out;
}

// each relation written out separately, as printed; returns one flag per relation
template <class T>
std::vector<bool> check_printed_epsilon_relations(const SystemParams<T>& prm, const EpsilonVector<T>& ev) {
    const int n = prm.n;
    auto e = [&](int i) -> const T& { return ev.eps[i]; };
    auto a = [&](int i) -> const T& { return prm.alpha[i]; };
    std::vector<bool> ok;
    ok.push_back(is_zero(a(0) - (T(1) + T(2) * e(0) - e(2))));
    ok.push_back(is_zero(a(1) - (T(2) * e(1) - e(2))));
    if (n == 1) {
        // for n = 1 the alpha_2 and alpha_{2n} relations coincide
        ok.push_back(is_zero(a(2) - (-e(0) - e(1) + T(2) * e(2) - e(3) - e(4))));
    } else {
        ok.push_back(is_zero(a(2) - (-e(0) - e(1) + T(2) * e(2) - e(3))));
        for (int i = 3; i <= 2 * n - 1; ++i) ok.push_back(is_zero(a(i) - (-e(i - 1) + T(2) * e(i) - e(i + 1))));
        ok.push_back(is_zero(a(2 * n) - (-e(2 * n - 1) + T(2) * e(2 * n) - e(2 * n + 1) - e(2 * n + 2))));
    }
    ok.push_back(is_zero(a(2 * n + 1) - (-e(2 * n) + T(2) * e(2 * n + 1))));
    ok.push_back(is_zero(a(2 * n + 2) - (-e(2 * n) + T(2) * e(2 * n + 2))));
    return ok;
}

// Cartan element diag(d_1..d_{2n+2}, -d_{2n+2}..-d_1) with (u|H_j) = v_j
template <class T>
std::vector<T> solve_diagonal(int n, const std::vector<T>& v) {
    if (static_cast<int>(v.size()) != 2 * n + 3) throw std::invalid_argument("pairing vector has wrong length");
    auto mk = marks(n);
    T ms(0);
    double scale = 0;
    for (int j = 0; j < 2 * n + 3; ++j) {
        ms += T(mk[j]) * v[j];
        scale = std::max(scale, magnitude(v[j]));
    }
    bool bad = ScalarTraits<T>::exact ? !is_zero(ms) : magnitude(ms) > 1e-9 * std::max(1.0, scale);
    if (bad) throw PairingInconsistentError("marks-weighted sum of Cartan pairings is nonzero");
    std::vector<T> d(2 * n + 3);  // 1-based
    d[2 * n + 1] = (v[2 * n + 1] + v[2 * n + 2]) / T(2);
    d[2 * n + 2] = (v[2 * n + 2] - v[2 * n + 1]) / T(2);
    for (int i = 2 * n; i >= 1; --i) d[i] = v[i] + d[i + 1];
    T check = -d[1] - d[2] - v[0];
    bool off = ScalarTraits<T>::exact ? !is_zero(check) : magnitude(check) > 1e-9 * std::max(1.0, scale);
    if (off) throw PairingInconsistentError("node-0 pairing not reproduced by the chain solve");
    return std::vector<T>(d.begin() + 1, d.end());
}

template <class T>
LoopMatrix<T> diagonal_element(int n, const std::vector<T>& d) {
    const int N = matrix_size(n);
    LoopMatrix<T> out(N);
    for (int i = 0; i < 2 * n + 2; ++i) {
        out.add(0, i, i, d[i]);
        out.add(0, N - 1 - i, N - 1 - i, -d[i]);
    }
    return out;
}

template <class T>
LoopMatrix<T> build_M(const PhaseState<T>& st, const SystemParams<T>& prm, const EpsilonVector<T>& ev) {
    const int n = prm.n;
    const auto& b = chevalley(n);
    LoopMatrix<T> M(matrix_size(n));
    auto phi = phi_coords(st);
    for (int i = 0; i < 2 * n + 3; ++i) {
        accumulate(M, b.H[i], ev.eps[i]);
        accumulate(M, b.E[i], phi[i]);
    }
    accumulate(M, lax_frame(n).cross, T(1) / T(2 * n + 2));
    return M;
}

// Which of the documented corrections to apply on top of the printed B data.
struct LaxTranscription {
    bool fix_sign = true;  // B is the negative of the printed assembly
    bool fix_x = true;     // x_1 and x_{2i+1}
    bool fix_u = true;     // Cartan pairings (u|alpha_j)
    static LaxTranscription literal() { return {false, false, false}; }
};

template <class T>
struct LaxCoefficients {
    std::vector<T> x;  // x_0..x_{2n+2}
    std::vector<T> y;  // y_1..y_{2n+1} at index 1..2n+1 (index 0 unused)
    std::vector<T> v;  // (u|alpha_j^vee), j = 0..2n+2
};

// coefficient lists in the printed sign convention
template <class T>
LaxCoefficients<T> printed_coefficients(const PhaseState<T>& st, const SystemParams<T>& prm,
                                        LaxTranscription tr = {}) {
    const int n = prm.n;
    const T K(2 * n + 2), s = st.s, one(1), two(2);
    auto q = [&](int i) -> const T& { return st.q[i - 1]; };
    auto p = [&](int i) -> const T& { return st.p[i - 1]; };
    auto a = [&](int j) -> const T& { return prm.alpha[j]; };
    auto bet = derived_betas(prm);
    auto b1 = [&](int i) { return bet.b1[i - 1]; };
    auto b3 = [&](int i) { return i <= n ? bet.b3[i - 1] : T(0); };
    auto b4 = [&](int i) { return i <= n ? bet.b4[i - 1] : T(0); };
    auto W = [&](int j) { return two * q(j) * ((q(j) - one) * p(j) + a(2 * j)); };
    auto S = [&](int i) {  // sum_{j<=i} 2(q_j - s)p_j
        T acc(0);
        for (int j = 1; j <= i; ++j) acc += two * (q(j) - s) * p(j);
        return acc;
    };
    auto Wtail = [&](int i) {  // sum_{j>i} W_j
        T acc(0);
        for (int j = i + 1; j <= n; ++j) acc += W(j);
        return acc;
    };
    const T ss1 = s * (s - one);

    LaxCoefficients<T> c;
    c.x.assign(2 * n + 3, T(0));
    c.y.assign(2 * n + 2, T(0));
    c.v.assign(2 * n + 3, T(0));

    c.x[0] = -(q(1) - s) / K;
    c.x[1] = tr.fix_x ? -ss1 : one;
    for (int i = 1; i <= n - 1; ++i) {
        T prod = (q(i) - s) * (q(i + 1) - s);
        c.x[2 * i + 1] = tr.fix_x ? prod - ss1 : ss1 - prod;
    }
    c.x[2 * n + 1] = -(s - one) * q(n);
    c.x[2 * n + 2] = -s * (q(n) - one);
    for (int i = 1; i <= n; ++i) {
        T acc(0);
        for (int j = 1; j <= i - 1; ++j) acc += two * ((q(j) - s) * p(j) + a(2 * j)) + a(2 * j + 1);
        acc += (q(i) - s) * p(i) + a(2 * i) + a(0);
        c.x[2 * i] = acc / K;
    }

    c.y[1] = -one / (K * K);
    for (int i = 1; i <= n - 1; ++i) {
        c.y[2 * i] = -(q(i + 1) - s) / K;
        c.y[2 * i + 1] = (q(i) - s) / K;
    }
    c.y[2 * n] = (s - one) / K;
    c.y[2 * n + 1] = s / K;

    c.v[0] = -a(0) * (q(1) - s);
    c.v[1] = -a(0) * (q(1) + s - one) - Wtail(0) - (two * a(2) + b3(1)) * (s - one) - b4(1) * s;
    for (int i = 1; i <= n - 1; ++i) {
        T lead = S(i) + b1(i) + two * a(2 * i);
        T v = -lead * (q(i) + q(i + 1) - one) - Wtail(i) - (two * a(2 * i + 2) + b3(i + 1)) * (s - one);
        if (tr.fix_u) v = v - b4(i) * s - a(2 * i + 1) * (q(i + 1) - one);
        else v = v - b4(i + 1) * s;
        c.v[2 * i + 1] = v;
    }
    T tail = S(n) + b1(n) + two * a(2 * n);
    c.v[2 * n + 1] = -tail * q(n) - (tr.fix_u ? a(2 * n + 2) : a(2 * n + 1)) * s;
    c.v[2 * n + 2] = -tail * (q(n) - one) - (tr.fix_u ? a(2 * n + 1) : a(2 * n + 2)) * (s - one);
    for (int i = 1; i <= n; ++i) {
        T brace = S(i - 1) + (q(i) - s) * p(i) + b1(i) + (tr.fix_u ? a(2 * i) : two * a(2 * i));
        T v = brace * (two * q(i) - one) + q(i) * ((q(i) - one) * p(i) + a(2 * i)) + Wtail(i);
        if (tr.fix_u) v += (a(2 * i) + b3(i)) * (s - one) + b4(i) * s;
        else v += (two * a(2 * i) + b3(i + 1)) * (s - one) + b4(i + 1) * s;
        c.v[2 * i] = v;
    }
    return c;
}

template <class T>
LoopMatrix<T> assemble_B(int n, const LaxCoefficients<T>& c, bool negate) {
    const auto& b = chevalley(n);
    const auto& fr = lax_frame(n);
    LoopMatrix<T> B = diagonal_element(n, solve_diagonal(n, c.v));
    for (int i = 0; i < 2 * n + 3; ++i) accumulate(B, b.E[i], c.x[i]);
    accumulate(B, fr.e02, c.y[1]);
    for (int i = 2; i <= 2 * n; ++i) accumulate(B, fr.eii[i], c.y[i]);
    accumulate(B, fr.e2n_2n2, c.y[2 * n + 1]);
    accumulate(B, fr.triples, c.y[1]);
    if (negate) B *= T(-1);
    return B;
}

template <class T>
LoopMatrix<T> build_B(const PhaseState<T>& st, const SystemParams<T>& prm, LaxTranscription tr = {}) {
    return assemble_B(prm.n, printed_coefficients(st, prm, tr), tr.fix_sign);
}

// s(s-1) dphi/ds given s(s-1)(q', p')
template <class T>
std::vector<T> scaled_phi_rates(int n, const T& s, const std::vector<T>& dq, const std::vector<T>& dp) {
    const T K(2 * n + 2);
    std::vector<T> d(2 * n + 3, T(0));
    d[1] = dq[0] - s * (s - T(1));
    for (int i = 1; i <= n - 1; ++i) d[2 * i + 1] = dq[i] - dq[i - 1];
    for (int j = 1; j <= n; ++j) d[2 * j] = -dp[j - 1] / K;
    d[2 * n + 1] = -dq[n - 1];
    d[2 * n + 2] = -dq[n - 1];
    return d;
}

// R = s(s-1) dM/ds + z dB/dz + [M,B] with the supplied rates
template <class T>
LoopMatrix<T> residual_with_rates(const PhaseState<T>& st, const SystemParams<T>& prm, const EpsilonVector<T>& ev,
                                  const std::vector<T>& dq, const std::vector<T>& dp, LaxTranscription tr = {}) {
    const int n = prm.n;
    const auto& b = chevalley(n);
    auto M = build_M(st, prm, ev);
    auto B = build_B(st, prm, tr);
    LoopMatrix<T> R = B.z_derivative() + bracket(M, B);
    auto dphi = scaled_phi_rates(n, st.s, dq, dp);
    for (int i = 0; i < 2 * n + 3; ++i) accumulate(R, b.E[i], dphi[i]);
    return R;
}

template <class T>
LoopMatrix<T> compatibility_residual(const PhaseState<T>& st, const SystemParams<T>& prm, const EpsilonVector<T>& ev,
                                     LaxTranscription tr = {}, HamiltonianForm form = HamiltonianForm::corrected) {
    auto [dq, dp] = scaled_vector_field(st, prm, form);
    return residual_with_rates(st, prm, ev, dq, dp, tr);
}

// Solves the E_i-components of R = 0 for s(s-1)(q', p'); throws if inconsistent.
template <class T>
std::pair<std::vector<T>, std::vector<T>> converse_rates(const PhaseState<T>& st, const SystemParams<T>& prm,
                                                         const EpsilonVector<T>& ev, LaxTranscription tr = {}) {
    const int n = prm.n, m = 2 * n + 3;
    const auto& b = chevalley(n);
    std::vector<T> zero(n, T(0));
    auto R0 = residual_with_rates(st, prm, ev, zero, zero, tr);
    auto Fcast = [&](int i) { return b.F[i].template cast<T>(); };
    std::vector<std::vector<T>> A(m, std::vector<T>(2 * n, T(0)));
    std::vector<T> rhs(m);
    for (int i = 0; i < m; ++i) rhs[i] = -invariant_form(R0, Fcast(i));
    for (int k = 0; k < 2 * n; ++k) {
        std::vector<T> dq = zero, dp = zero;
        (k < n ? dq[k] : dp[k - n]) = T(1);
        // only the s(s-1)dM/ds term depends on the rates, so differences isolate it
        auto Rk = residual_with_rates(st, prm, ev, dq, dp, tr) - R0;
        for (int i = 0; i < m; ++i) A[i][k] = invariant_form(Rk, Fcast(i));
    }
    auto sol = solve_linear(A, rhs, 1e-9);
    return {std::vector<T>(sol.begin(), sol.begin() + n), std::vector<T>(sol.begin() + n, sol.end())};
}

// {phi_i, phi_j} = ([F_j,F_i] | M+)/(2n+2) with M+ = (2n+2)M
template <class T>
T poisson_from_form(int i, int j, const PhaseState<T>& st, const SystemParams<T>& prm, const EpsilonVector<T>& ev) {
    const auto& b = chevalley(prm.n);
    auto M = build_M(st, prm, ev);
    auto f = bracket(b.F[j], b.F[i]).template cast<T>();
    return invariant_form(f, M);
}

// constant canonical bracket {phi_i, phi_j} of the dictionary
Rational canonical_phi_bracket(int n, int i, int j, NodeConvention conv = {});
// all of them, cached per (n, convention)
const std::vector<std::vector<Rational>>& phi_bracket_table(int n, NodeConvention conv = {});

}  // namespace pd
