#pragma once

#include "painleve_d/algebra.hpp"
#include "painleve_d/polynomial.hpp"

#include <string>
#include <vector>

namespace pd {

struct SingularTimeError : std::domain_error {
    using std::domain_error::domain_error;
};

struct PhiMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

template <class T>
struct SystemParams {
    int n = 1;
    std::vector<T> alpha;  // alpha_0..alpha_{2n+2}

    T marks_sum() const {
        auto m = marks(n);
        T acc(0);
        for (size_t i = 0; i < m.size(); ++i) acc += T(m[i]) * alpha[i];
        return acc;
    }
    bool normalized() const { return is_zero(marks_sum() - T(1)); }
    void validate() const {
        if (n < 1) throw std::invalid_argument("n must be >= 1");
        if (static_cast<int>(alpha.size()) != 2 * n + 3)
            throw std::invalid_argument("alpha must have 2n+3 entries");
    }
    template <class U>
    SystemParams<U> cast() const {
        SystemParams<U> out{n, {}};
        for (auto& a : alpha) out.alpha.push_back(convert<U>(a));
        return out;
    }
    friend bool operator==(const SystemParams& a, const SystemParams& b) { return a.n == b.n && a.alpha == b.alpha; }

private:
    template <class U>
    static U convert(const T& v) {
        if constexpr (std::is_same_v<T, Rational>) return from_rational<U>(v);
        else return U(v);
    }
};

template <class T>
struct PhaseState {
    T s{};
    std::vector<T> q, p;

    int n() const { return static_cast<int>(q.size()); }
    template <class U>
    PhaseState<U> cast() const {
        auto c = [](const T& v) {
            if constexpr (std::is_same_v<T, Rational>) return from_rational<U>(v);
            else return U(v);
        };
        PhaseState<U> out;
        out.s = c(s);
        for (auto& v : q) out.q.push_back(c(v));
        for (auto& v : p) out.p.push_back(c(v));
        return out;
    }
    // packed as (q_1..q_n, p_1..p_n, s)
    std::vector<T> packed() const {
        std::vector<T> x = q;
        x.insert(x.end(), p.begin(), p.end());
        x.push_back(s);
        return x;
    }
    friend bool operator==(const PhaseState& a, const PhaseState& b) { return a.s == b.s && a.q == b.q && a.p == b.p; }
};

template <class T>
struct DerivedBetas {
    // entry i-1 holds beta_{i,*}
    std::vector<T> b0, b1, b3, b4;
};

template <class T>
DerivedBetas<T> derived_betas(const SystemParams<T>& prm) {
    prm.validate();
    const int n = prm.n;
    auto a = [&](int j) -> const T& { return prm.alpha[j]; };
    DerivedBetas<T> b;
    for (int i = 1; i <= n; ++i) {
        T b0 = a(1), b1 = a(0), b3 = a(2 * n + 1), b4 = a(2 * n + 2);
        for (int j = 1; j <= i - 1; ++j) {
            b0 += a(2 * j + 1);
            b1 += T(2) * a(2 * j) + a(2 * j + 1);
        }
        for (int j = i; j <= n - 1; ++j) {
            b3 += a(2 * j + 1);
            b4 += a(2 * j + 1);
        }
        for (int j = i + 1; j <= n; ++j) b3 += T(2) * a(2 * j);
        b.b0.push_back(b0);
        b.b1.push_back(b1);
        b.b3.push_back(b3);
        b.b4.push_back(b4);
    }
    return b;
}

// corrected: the form whose flow commutes with the Weyl action (see docs/ERRATA.md)
// printed: the transcription with the beta roles as typeset
enum class HamiltonianForm { corrected, printed };

// H as a polynomial in (q_1..q_n, p_1..p_n, s)
template <class T>
Poly<T> hamiltonian_polynomial(const SystemParams<T>& prm, HamiltonianForm form = HamiltonianForm::corrected) {
    const int n = prm.n;
    const int nv = 2 * n + 1;
    using P = Poly<T>;
    auto bet = derived_betas(prm);
    auto one = P::constant(nv, T(1));
    auto s = P::variable(nv, 2 * n);
    P H(nv);
    for (int i = 0; i < n; ++i) {
        auto q = P::variable(nv, i), p = P::variable(nv, n + i);
        const T& a2i = prm.alpha[2 * (i + 1)];
        T c_qq1, c_q1s, c_qs, c_lin;
        if (form == HamiltonianForm::corrected) {
            c_qq1 = bet.b0[i] - T(1);
            c_q1s = bet.b4[i];
            c_qs = bet.b3[i];
            c_lin = a2i * (a2i + bet.b1[i]);
        } else {
            c_qq1 = bet.b1[i] - T(1);
            c_q1s = bet.b3[i];
            c_qs = bet.b4[i];
            c_lin = a2i * (a2i + bet.b0[i]);
        }
        auto qq1 = q * (q - one);
        H += qq1 * (q - s) * p * p;
        H -= (qq1 * c_qq1 + (q - one) * (q - s) * c_q1s + q * (q - s) * c_qs) * p;
        H += q * c_lin;
    }
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            auto qi = P::variable(nv, i), pi = P::variable(nv, n + i);
            auto qj = P::variable(nv, j), pj = P::variable(nv, n + j);
            H += (qi - s) * pi * qj * ((qj - one) * pj + one * prm.alpha[2 * (j + 1)]) * T(2);
        }
    return H;
}

template <class T>
T hamiltonian(const PhaseState<T>& st, const SystemParams<T>& prm, HamiltonianForm form = HamiltonianForm::corrected) {
    return hamiltonian_polynomial(prm, form).eval(st.packed());
}

// Holds H and its partials; s(s-1)q' = dH/dp, s(s-1)p' = -dH/dq.
template <class T>
class HamiltonianSystem {
public:
    HamiltonianSystem(const SystemParams<T>& prm, HamiltonianForm form = HamiltonianForm::corrected)
        : prm_(prm), H_(hamiltonian_polynomial(prm, form)) {
        const int n = prm.n;
        for (int i = 0; i < n; ++i) {
            dq_.push_back(H_.derivative(n + i));
            dp_.push_back(-H_.derivative(i));
        }
    }
    const SystemParams<T>& params() const { return prm_; }
    const Poly<T>& hamiltonian() const { return H_; }
    const std::vector<Poly<T>>& dq_polys() const { return dq_; }
    const std::vector<Poly<T>>& dp_polys() const { return dp_; }

    // s(s-1) * (q', p'); polynomial, no division
    template <class U>
    std::pair<std::vector<U>, std::vector<U>> scaled(const PhaseState<U>& st) const {
        auto x = st.packed();
        std::pair<std::vector<U>, std::vector<U>> out;
        for (auto& d : dq_) out.first.push_back(d.eval(x));
        for (auto& d : dp_) out.second.push_back(d.eval(x));
        return out;
    }
    template <class U>
    std::pair<std::vector<U>, std::vector<U>> unscaled(const PhaseState<U>& st) const {
        U w = st.s * (st.s - U(1));
        if (value_is_zero(st.s) || value_is_zero(st.s - U(1)))
            throw SingularTimeError("vector field requested at singular time s in {0,1}");
        auto out = scaled(st);
        for (auto& v : out.first) v = v / w;
        for (auto& v : out.second) v = v / w;
        return out;
    }

private:
    SystemParams<T> prm_;
    Poly<T> H_;
    std::vector<Poly<T>> dq_, dp_;
};

template <class T>
std::pair<std::vector<T>, std::vector<T>> scaled_vector_field(const PhaseState<T>& st, const SystemParams<T>& prm,
                                                              HamiltonianForm form = HamiltonianForm::corrected) {
    return HamiltonianSystem<T>(prm, form).scaled(st);
}

template <class T>
std::pair<std::vector<T>, std::vector<T>> vector_field(const PhaseState<T>& st, const SystemParams<T>& prm,
                                                       HamiltonianForm form = HamiltonianForm::corrected) {
    return HamiltonianSystem<T>(prm, form).unscaled(st);
}

// Which phi-dictionary slots are exchanged relative to the printed one.
struct NodeConvention {
    bool swap01 = false;
    bool swapTail = false;

    static NodeConvention parse(const std::string& name);
    std::string name() const;
    // slot that holds the printed entry for node j
    int slot(int n, int j) const {
        if (swap01 && (j == 0 || j == 1)) return 1 - j;
        if (swapTail && (j == 2 * n + 1 || j == 2 * n + 2)) return 4 * n + 3 - j;
        return j;
    }
    friend bool operator==(const NodeConvention& a, const NodeConvention& b) {
        return a.swap01 == b.swap01 && a.swapTail == b.swapTail;
    }
};

std::vector<NodeConvention> all_conventions();

// printed dictionary, then permuted by the convention
template <class T>
std::vector<T> phi_coords(const PhaseState<T>& st, NodeConvention conv = {}) {
    const int n = st.n();
    const T K(2 * n + 2);
    std::vector<T> printed(2 * n + 3);
    printed[0] = T(1) / K;
    printed[1] = st.q[0] - st.s;
    for (int i = 1; i <= n - 1; ++i) printed[2 * i + 1] = st.q[i] - st.q[i - 1];
    for (int j = 1; j <= n; ++j) printed[2 * j] = -st.p[j - 1] / K;
    printed[2 * n + 1] = T(1) - st.q[n - 1];
    printed[2 * n + 2] = -st.q[n - 1];
    std::vector<T> out(2 * n + 3);
    for (int j = 0; j < 2 * n + 3; ++j) out[conv.slot(n, j)] = printed[j];
    return out;
}

// phi_0 = 1/(2n+2), phi_{2n+1} - phi_{2n+2} = 1, phi_1 + sum phi_{2i+1} + phi_{2n+2} = -s
template <class T>
void check_phi_invariants(int n, const std::vector<T>& phi, const T& s, NodeConvention conv = {}) {
    if (static_cast<int>(phi.size()) != 2 * n + 3) throw PhiMismatchError("phi vector has wrong length");
    auto at = [&](int j) -> const T& { return phi[conv.slot(n, j)]; };
    double scale = magnitude(s);
    for (auto& v : phi) scale = std::max(scale, magnitude(v));
    if (!approx_zero(T(at(0) - T(1) / T(2 * n + 2)), scale)) throw PhiMismatchError("phi_0 must equal 1/(2n+2)");
    if (!approx_zero(T(at(2 * n + 1) - at(2 * n + 2) - T(1)), scale))
        throw PhiMismatchError("phi_{2n+1} - phi_{2n+2} must equal 1");
    T tel = at(1) + at(2 * n + 2);
    for (int i = 1; i <= n - 1; ++i) tel += at(2 * i + 1);
    if (!approx_zero(T(tel + s), scale)) throw PhiMismatchError("telescoping sum of phi must equal -s");
}

template <class T>
PhaseState<T> phi_to_state(int n, const std::vector<T>& phi, const T& s, NodeConvention conv = {}) {
    check_phi_invariants(n, phi, s, conv);
    auto at = [&](int j) -> const T& { return phi[conv.slot(n, j)]; };
    PhaseState<T> st;
    st.s = s;
    st.q.assign(n, T(0));
    st.p.assign(n, T(0));
    const T K(2 * n + 2);
    for (int j = 1; j <= n; ++j) st.p[j - 1] = -K * at(2 * j);
    st.q[n - 1] = -at(2 * n + 2);
    for (int i = n - 1; i >= 1; --i) st.q[i - 1] = st.q[i] - at(2 * i + 1);
    return st;
}

// {f,g} = sum_k df/dp_k dg/dq_k - df/dq_k dg/dp_k, variables (q, p, s)
template <class T>
Poly<T> poisson_bracket(int n, const Poly<T>& f, const Poly<T>& g) {
    Poly<T> out(2 * n + 1);
    for (int k = 0; k < n; ++k) {
        out += f.derivative(n + k) * g.derivative(k);
        out -= f.derivative(k) * g.derivative(n + k);
    }
    return out;
}

// the phi dictionary as polynomials in (q, p, s)
template <class T>
std::vector<Poly<T>> phi_polynomials(int n, NodeConvention conv = {}) {
    const int nv = 2 * n + 1;
    using P = Poly<T>;
    std::vector<P> st(nv);
    for (int i = 0; i < nv; ++i) st[i] = P::variable(nv, i);
    const T K(2 * n + 2);
    std::vector<P> printed(2 * n + 3, P(nv));
    printed[0] = P::constant(nv, T(1) / K);
    printed[1] = st[0] - st[2 * n];
    for (int i = 1; i <= n - 1; ++i) printed[2 * i + 1] = st[i] - st[i - 1];
    for (int j = 1; j <= n; ++j) printed[2 * j] = st[n + j - 1] * (T(-1) / K);
    printed[2 * n + 1] = P::constant(nv, T(1)) - st[n - 1];
    printed[2 * n + 2] = -st[n - 1];
    std::vector<P> out(2 * n + 3, P(nv));
    for (int j = 0; j < 2 * n + 3; ++j) out[conv.slot(n, j)] = printed[j];
    return out;
}

}  // namespace pd
