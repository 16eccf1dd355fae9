#pragma once

#include "painleve_d/rational.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

namespace pd {

// Square sparse matrix, 0-based (row, col) keys, zeros never stored.
template <class T>
class SparseMatrix {
public:
    using Key = std::pair<int, int>;

    SparseMatrix() = default;
    explicit SparseMatrix(int size) : size_(size) {}

    static SparseMatrix identity(int size) {
        SparseMatrix m(size);
        for (int i = 0; i < size; ++i) m.set(i, i, T(1));
        return m;
    }

    int size() const { return size_; }
    bool empty() const { return entries_.empty(); }
    const std::map<Key, T>& entries() const { return entries_; }

    T get(int r, int c) const {
        auto it = entries_.find({r, c});
        return it == entries_.end() ? T(0) : it->second;
    }
    void set(int r, int c, const T& v) {
        check_index(r, c);
        if (is_zero(v)) entries_.erase({r, c});
        else entries_[{r, c}] = v;
    }
    void add(int r, int c, const T& v) {
        check_index(r, c);
        auto it = entries_.find({r, c});
        if (it == entries_.end()) {
            if (!is_zero(v)) entries_.emplace(Key{r, c}, v);
            return;
        }
        it->second += v;
        if (is_zero(it->second)) entries_.erase(it);
    }

    SparseMatrix& operator+=(const SparseMatrix& o) {
        same_size(o);
        for (auto& [k, v] : o.entries_) add(k.first, k.second, v);
        return *this;
    }
    SparseMatrix& operator-=(const SparseMatrix& o) {
        same_size(o);
        for (auto& [k, v] : o.entries_) add(k.first, k.second, -v);
        return *this;
    }
    SparseMatrix& operator*=(const T& c) {
        if (is_zero(c)) { entries_.clear(); return *this; }
        for (auto it = entries_.begin(); it != entries_.end();) {
            it->second *= c;
            if (is_zero(it->second)) it = entries_.erase(it);
            else ++it;
        }
        return *this;
    }
    friend SparseMatrix operator+(SparseMatrix a, const SparseMatrix& b) { return a += b; }
    friend SparseMatrix operator-(SparseMatrix a, const SparseMatrix& b) { return a -= b; }
    friend SparseMatrix operator*(SparseMatrix a, const T& c) { return a *= c; }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        a.same_size(b);
        // bucket b by row so the product is O(nnz(a) * avg row length of b)
        std::vector<std::vector<std::pair<int, const T*>>> rows(b.size_);
        for (auto& [k, v] : b.entries_) rows[k.first].push_back({k.second, &v});
        SparseMatrix out(a.size_);
        for (auto& [k, v] : a.entries_)
            for (auto& [c, bv] : rows[k.second]) out.add(k.first, c, v * *bv);
        return out;
    }

    T trace_of_product(const SparseMatrix& b) const {
        same_size(b);
        T acc(0);
        for (auto& [k, v] : entries_) {
            auto it = b.entries_.find({k.second, k.first});
            if (it != b.entries_.end()) acc += v * it->second;
        }
        return acc;
    }

    SparseMatrix transpose() const {
        SparseMatrix out(size_);
        for (auto& [k, v] : entries_) out.entries_.emplace(Key{k.second, k.first}, v);
        return out;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.size_ == b.size_ && a.entries_ == b.entries_;
    }

    template <class U>
    SparseMatrix<U> cast() const {
        SparseMatrix<U> out(size_);
        for (auto& [k, v] : entries_) out.set(k.first, k.second, convert<U>(v));
        return out;
    }

private:
    template <class U>
    static U convert(const T& v) {
        if constexpr (std::is_same_v<T, Rational>) return from_rational<U>(v);
        else return U(v);
    }
    void check_index(int r, int c) const {
        if (r < 0 || c < 0 || r >= size_ || c >= size_) throw std::out_of_range("matrix index");
    }
    void same_size(const SparseMatrix& o) const {
        if (o.size_ != size_) throw std::invalid_argument("matrix size mismatch");
    }

    int size_ = 0;
    std::map<Key, T> entries_;
};

// Finite Laurent polynomial in z with sparse matrix coefficients.
template <class T>
class LoopMatrix {
public:
    using Coeff = SparseMatrix<T>;

    LoopMatrix() = default;
    explicit LoopMatrix(int size) : size_(size) {}
    LoopMatrix(int degree, Coeff c) : size_(c.size()) {
        if (!c.empty()) terms_.emplace(degree, std::move(c));
    }

    static LoopMatrix identity(int size) { return LoopMatrix(0, Coeff::identity(size)); }

    // z^degree * unit(r, c), 0-based
    static LoopMatrix unit(int size, int degree, int r, int c, const T& v = T(1)) {
        Coeff m(size);
        m.set(r, c, v);
        return LoopMatrix(degree, std::move(m));
    }

    int size() const { return size_; }
    bool is_zero_matrix() const { return terms_.empty(); }
    const std::map<int, Coeff>& terms() const { return terms_; }

    Coeff coefficient(int degree) const {
        auto it = terms_.find(degree);
        return it == terms_.end() ? Coeff(size_) : it->second;
    }
    T get(int degree, int r, int c) const {
        auto it = terms_.find(degree);
        return it == terms_.end() ? T(0) : it->second.get(r, c);
    }
    void add(int degree, int r, int c, const T& v) {
        auto [it, inserted] = terms_.try_emplace(degree, Coeff(size_));
        it->second.add(r, c, v);
        if (it->second.empty()) terms_.erase(it);
    }

    LoopMatrix& operator+=(const LoopMatrix& o) {
        same_size(o);
        for (auto& [d, m] : o.terms_) {
            auto [it, inserted] = terms_.try_emplace(d, Coeff(size_));
            it->second += m;
            if (it->second.empty()) terms_.erase(it);
        }
        return *this;
    }
    LoopMatrix& operator-=(const LoopMatrix& o) {
        same_size(o);
        for (auto& [d, m] : o.terms_) {
            auto [it, inserted] = terms_.try_emplace(d, Coeff(size_));
            it->second -= m;
            if (it->second.empty()) terms_.erase(it);
        }
        return *this;
    }
    LoopMatrix& operator*=(const T& c) {
        for (auto it = terms_.begin(); it != terms_.end();) {
            it->second *= c;
            if (it->second.empty()) it = terms_.erase(it);
            else ++it;
        }
        return *this;
    }
    friend LoopMatrix operator+(LoopMatrix a, const LoopMatrix& b) { return a += b; }
    friend LoopMatrix operator-(LoopMatrix a, const LoopMatrix& b) { return a -= b; }
    friend LoopMatrix operator*(LoopMatrix a, const T& c) { return a *= c; }
    friend LoopMatrix operator*(const T& c, LoopMatrix a) { return a *= c; }
    LoopMatrix operator-() const { return *this * T(-1); }

    friend LoopMatrix operator*(const LoopMatrix& a, const LoopMatrix& b) {
        a.same_size(b);
        LoopMatrix out(a.size_);
        for (auto& [da, ma] : a.terms_)
            for (auto& [db, mb] : b.terms_) {
                auto prod = ma * mb;
                if (prod.empty()) continue;
                auto [it, inserted] = out.terms_.try_emplace(da + db, Coeff(a.size_));
                it->second += prod;
                if (it->second.empty()) out.terms_.erase(it);
            }
        return out;
    }

    // multiply by z^k
    LoopMatrix shifted(int k) const {
        LoopMatrix out(size_);
        for (auto& [d, m] : terms_) out.terms_.emplace(d + k, m);
        return out;
    }

    // z d/dz
    LoopMatrix z_derivative() const {
        LoopMatrix out(size_);
        for (auto& [d, m] : terms_)
            if (d != 0) out.terms_.emplace(d, m * T(d));
        return out;
    }

    friend bool operator==(const LoopMatrix& a, const LoopMatrix& b) {
        return a.size_ == b.size_ && a.terms_ == b.terms_;
    }

    double max_abs_entry() const {
        double best = 0;
        for (auto& [d, m] : terms_)
            for (auto& [k, v] : m.entries()) best = std::max(best, magnitude(v));
        return best;
    }

    std::pair<int, int> degree_range() const {
        if (terms_.empty()) return {0, -1};
        return {terms_.begin()->first, terms_.rbegin()->first};
    }

    template <class U>
    LoopMatrix<U> cast() const {
        LoopMatrix<U> out(size_);
        for (auto& [d, m] : terms_) out += LoopMatrix<U>(d, m.template cast<U>());
        return out;
    }

private:
    void same_size(const LoopMatrix& o) const {
        if (o.size_ != size_) throw std::invalid_argument("loop matrix size mismatch");
    }

    int size_ = 0;
    std::map<int, Coeff> terms_;
};

template <class T>
LoopMatrix<T> bracket(const LoopMatrix<T>& a, const LoopMatrix<T>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("bracket: size mismatch");
    return a * b - b * a;
}

// (z^j X | z^k Y) = delta_{j+k,0} tr(XY)/2
template <class T>
T invariant_form(const LoopMatrix<T>& a, const LoopMatrix<T>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("invariant_form: size mismatch");
    T acc(0);
    for (auto& [d, m] : a.terms()) {
        auto it = b.terms().find(-d);
        if (it != b.terms().end()) acc += m.trace_of_product(it->second);
    }
    return acc / T(2);
}

}  // namespace pd
