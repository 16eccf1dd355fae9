#pragma once

#include "painleve_d/lax.hpp"

#include <string>
#include <variant>

namespace pd {

struct PoleError : std::domain_error {
    int node = -1;  // reflection node, or -k for automorphism pi_k
    int step = -1;  // position in a word, -1 when not in a word
    PoleError(const std::string& what, int node_, int step_ = -1)
        : std::domain_error(what), node(node_), step(step_) {}
};

struct ShapeViolationError : std::logic_error {
    using std::logic_error::logic_error;
};

struct WeylToken {
    enum Kind { reflection, automorphism } kind = reflection;
    int index = 0;  // node for reflections, 1 or 2 for automorphisms
    std::string str() const { return (kind == reflection ? "r" : "p") + std::to_string(index); }
    friend bool operator==(const WeylToken& a, const WeylToken& b) { return a.kind == b.kind && a.index == b.index; }
};
using WeylWord = std::vector<WeylToken>;

// "r0,r3,p1"; empty string is the empty word
WeylWord parse_word(const std::string& text, int n);
std::string word_to_string(const WeylWord& w);

int sigma(int k, int n, int j);  // sigma_1 = (0,1)(2n+1,2n+2), sigma_2(j) = 2n+2-j

template <class T>
using Transformed = std::pair<SystemParams<T>, PhaseState<T>>;

template <class T>
SystemParams<T> reflect_params(int i, const SystemParams<T>& prm) {
    prm.validate();
    auto A = cartan_matrix(prm.n);
    if (i < 0 || i >= 2 * prm.n + 3) throw std::out_of_range("reflection node out of range");
    SystemParams<T> out = prm;
    for (int j = 0; j < 2 * prm.n + 3; ++j) out.alpha[j] = prm.alpha[j] - T(A[i][j]) * prm.alpha[i];
    return out;
}

// r_i(phi_j) = phi_j + (alpha_i / phi_i) {phi_i, phi_j}
template <class T>
Transformed<T> reflect_state_birational(int i, const SystemParams<T>& prm, const PhaseState<T>& st,
                                        NodeConvention conv = {}) {
    const int n = prm.n;
    auto phi = phi_coords(st, conv);
    std::vector<T> next = phi;
    const auto& table = phi_bracket_table(n, conv);
    bool moves = false;
    for (int j = 0; j < 2 * n + 3; ++j) moves = moves || !table[i][j].is_zero();
    if (moves) {
        if (value_is_zero(phi[i])) throw PoleError("reflection r" + std::to_string(i) + " has a pole (phi_i = 0)", i);
        T c = prm.alpha[i] / phi[i];
        for (int j = 0; j < 2 * n + 3; ++j) {
            const Rational& br = table[i][j];
            if (!br.is_zero()) next[j] += c * from_rational<T>(br);
        }
    }
    return {reflect_params(i, prm), phi_to_state(n, next, st.s, conv)};
}

// conjugation of z d/dz + M by 1 + (alpha_i/phi_i) F_i
template <class T>
Transformed<T> reflect_matrix(int i, const SystemParams<T>& prm, const PhaseState<T>& st, const T& gauge = T(0)) {
    const int n = prm.n;
    const int N = matrix_size(n);
    const auto& b = chevalley(n);
    auto ev = solve_epsilon(prm, gauge);
    auto M = build_M(st, prm, ev);
    auto phi = phi_coords(st);
    if (value_is_zero(phi[i])) throw PoleError("reflection r" + std::to_string(i) + " has a pole (phi_i = 0)", i);
    T c = prm.alpha[i] / phi[i];
    auto F = b.F[i].template cast<T>();
    auto G = LoopMatrix<T>::identity(N) + F * c;
    auto Ginv = LoopMatrix<T>::identity(N) - F * c;  // F_i^2 = 0
    auto Mp = G * M * Ginv;
    if (i == 0) Mp += F * c;  // -(z d/dz G) G^{-1}, F_0 carries 1/z

    SystemParams<T> out{n, std::vector<T>(2 * n + 3)};
    std::vector<T> phip(2 * n + 3);
    LoopMatrix<T> rest = Mp;
    for (int j = 0; j < 2 * n + 3; ++j) {
        out.alpha[j] = invariant_form(Mp, b.H[j].template cast<T>()) + (j == 0 ? T(1) : T(0));
        phip[j] = invariant_form(Mp, b.F[j].template cast<T>());
        accumulate(rest, b.E[j], T(-phip[j]));
    }
    accumulate(rest, lax_frame(n).cross, T(T(-1) / T(2 * n + 2)));
    // what remains must be a Cartan element
    double scale = M.max_abs_entry();
    for (auto& [d, m] : rest.terms())
        for (auto& [k, v] : m.entries())
            if ((d != 0 || k.first != k.second) && !approx_zero(v, scale))
                throw ShapeViolationError("conjugated matrix left the canonical shape");
    return {out, phi_to_state(n, phip, st.s)};
}

template <class T>
Transformed<T> automorphism_pi(int k, const SystemParams<T>& prm, const PhaseState<T>& st) {
    const int n = prm.n;
    if (k != 1 && k != 2) throw std::invalid_argument("automorphism index must be 1 or 2");
    SystemParams<T> out{n, std::vector<T>(2 * n + 3)};
    for (int j = 0; j < 2 * n + 3; ++j) out.alpha[j] = prm.alpha[sigma(k, n, j)];
    PhaseState<T> ns;
    ns.s = st.s;
    ns.q.resize(n);
    ns.p.resize(n);
    const T& s = st.s;
    if (k == 1) {
        if (value_is_zero(s) || value_is_zero(s - T(1))) throw PoleError("pi1 has a pole at s in {0,1}", -1);
        for (int i = 0; i < n; ++i) {
            const T &q = st.q[i], &p = st.p[i];
            T qs = q - s;
            if (value_is_zero(qs)) throw PoleError("pi1 has a pole (q_i = s)", -1);
            ns.q[i] = s * (q - T(1)) / qs;
            ns.p[i] = qs * (p * qs + prm.alpha[2 * i + 2]) / (s * (T(1) - s));
        }
    } else {
        if (value_is_zero(s)) throw PoleError("pi2 has a pole at s = 0", -2);
        // the diagram flip reverses the chain, so slot i reads from slot n+1-i
        for (int i = 0; i < n; ++i) {
            int r = n - 1 - i;
            const T &q = st.q[r], &p = st.p[r];
            if (value_is_zero(q)) throw PoleError("pi2 has a pole (q_i = 0)", -2);
            ns.q[i] = s / q;
            ns.p[i] = -q * (q * p + prm.alpha[2 * r + 2]) / s;
        }
    }
    return {out, ns};
}

template <class T>
Transformed<T> apply_generator(const WeylToken& g, const SystemParams<T>& prm, const PhaseState<T>& st,
                               NodeConvention conv = {}) {
    if (g.kind == WeylToken::reflection) return reflect_state_birational(g.index, prm, st, conv);
    return automorphism_pi(g.index, prm, st);
}

// applies tokens left to right
template <class T>
Transformed<T> apply_word(const WeylWord& w, const SystemParams<T>& prm, const PhaseState<T>& st,
                          NodeConvention conv = {}) {
    Transformed<T> cur{prm, st};
    for (size_t k = 0; k < w.size(); ++k) {
        try {
            cur = apply_generator(w[k], cur.first, cur.second, conv);
        } catch (const PoleError& e) {
            throw PoleError(std::string(e.what()) + " at step " + std::to_string(k + 1), e.node, static_cast<int>(k + 1));
        }
    }
    return cur;
}

// D g . V(x; alpha) == V(g(x); g(alpha)), with D g from dual numbers over the rationals
bool equivariance_check(const WeylToken& g, const SystemParams<Rational>& prm, const PhaseState<Rational>& st,
                        NodeConvention conv = {}, HamiltonianForm form = HamiltonianForm::corrected);

}  // namespace pd
