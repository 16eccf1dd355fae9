#pragma once

#include "painleve_d/rational.hpp"

#include <map>
#include <stdexcept>
#include <vector>

namespace pd {

// Sparse multivariate polynomial with coefficients in T.
template <class T>
class Poly {
public:
    using Monomial = std::vector<int>;

    Poly() = default;
    explicit Poly(int nvars) : nvars_(nvars) {}

    static Poly constant(int nvars, const T& c) {
        Poly p(nvars);
        p.add_term(Monomial(nvars, 0), c);
        return p;
    }
    static Poly variable(int nvars, int index) {
        Poly p(nvars);
        Monomial m(nvars, 0);
        m.at(index) = 1;
        p.add_term(m, T(1));
        return p;
    }

    int nvars() const { return nvars_; }
    const std::map<Monomial, T>& terms() const { return terms_; }
    bool is_zero_poly() const { return terms_.empty(); }

    void add_term(const Monomial& m, const T& c) {
        if (static_cast<int>(m.size()) != nvars_) throw std::invalid_argument("monomial arity");
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            if (!is_zero(c)) terms_.emplace(m, c);
            return;
        }
        it->second += c;
        if (is_zero(it->second)) terms_.erase(it);
    }

    Poly& operator+=(const Poly& o) {
        check(o);
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        check(o);
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    Poly operator-() const { return *this * T(-1); }
    friend Poly operator*(Poly a, const T& c) {
        Poly out(a.nvars_);
        for (auto& [m, v] : a.terms_) out.add_term(m, v * c);
        return out;
    }
    friend Poly operator*(const T& c, const Poly& a) { return a * c; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        a.check(b);
        Poly out(a.nvars_);
        Monomial m(a.nvars_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) {
                for (int i = 0; i < a.nvars_; ++i) m[i] = ma[i] + mb[i];
                out.add_term(m, ca * cb);
            }
        return out;
    }

    Poly derivative(int var) const {
        Poly out(nvars_);
        for (auto& [m, c] : terms_) {
            if (m.at(var) == 0) continue;
            Monomial d = m;
            d[var] -= 1;
            out.add_term(d, c * T(m[var]));
        }
        return out;
    }

    template <class U>
    U eval(const std::vector<U>& x) const {
        if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("eval arity");
        // cache powers per variable to avoid repeated multiplication
        std::vector<std::vector<U>> pw(nvars_);
        for (auto& [m, c] : terms_)
            for (int i = 0; i < nvars_; ++i)
                while (static_cast<int>(pw[i].size()) <= m[i]) {
                    if (pw[i].empty()) pw[i].push_back(U(1));
                    else pw[i].push_back(pw[i].back() * x[i]);
                }
        U acc(0);
        for (auto& [m, c] : terms_) {
            U t = coeff_as<U>(c);
            for (int i = 0; i < nvars_; ++i)
                if (m[i]) t = t * pw[i][m[i]];
            acc += t;
        }
        return acc;
    }

    template <class U>
    Poly<U> cast() const {
        Poly<U> out(nvars_);
        for (auto& [m, c] : terms_) out.add_term(m, coeff_as<U>(c));
        return out;
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.nvars_ == b.nvars_ && a.terms_ == b.terms_; }

private:
    template <class U>
    static U coeff_as(const T& c) {
        if constexpr (std::is_same_v<T, U>) return c;
        else if constexpr (std::is_same_v<T, Rational>) return from_rational<U>(c);
        else return U(c);
    }
    void check(const Poly& o) const {
        if (o.nvars_ != nvars_) throw std::invalid_argument("polynomial arity mismatch");
    }

    int nvars_ = 0;
    std::map<Monomial, T> terms_;
};

}  // namespace pd
