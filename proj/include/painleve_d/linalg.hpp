#pragma once

#include "painleve_d/rational.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace pd {

struct LinearSystemError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Solves A x = b for a (possibly overdetermined) system by row reduction.
// Throws if the system is inconsistent or the solution is not unique.
// Exact for Rational; partial pivoting with tolerance for floating types.
template <class T>
std::vector<T> solve_linear(std::vector<std::vector<T>> A, std::vector<T> b, double tol = 1e-12) {
    const int rows = static_cast<int>(A.size());
    const int cols = rows ? static_cast<int>(A[0].size()) : 0;
    if (static_cast<int>(b.size()) != rows) throw std::invalid_argument("solve_linear: rhs size");
    auto small = [&](const T& v) {
        if constexpr (ScalarTraits<T>::exact) return is_zero(v);
        else return magnitude(v) <= tol;
    };
    std::vector<int> pivot_col;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int best = -1;
        double best_mag = -1;
        for (int i = r; i < rows; ++i) {
            if (small(A[i][c])) continue;
            double m = magnitude(A[i][c]);
            if (ScalarTraits<T>::exact) { best = i; break; }
            if (m > best_mag) { best_mag = m; best = i; }
        }
        if (best < 0) continue;
        std::swap(A[r], A[best]);
        std::swap(b[r], b[best]);
        for (int i = 0; i < rows; ++i) {
            if (i == r || small(A[i][c])) continue;
            T f = A[i][c] / A[r][c];
            for (int k = c; k < cols; ++k) A[i][k] -= f * A[r][k];
            b[i] -= f * b[r];
        }
        pivot_col.push_back(c);
        ++r;
    }
    for (int i = r; i < rows; ++i)
        if (!small(b[i])) throw LinearSystemError("inconsistent linear system");
    if (r < cols) throw LinearSystemError("linear system has no unique solution");
    std::vector<T> x(cols);
    for (int i = 0; i < r; ++i) x[pivot_col[i]] = b[i] / A[i][pivot_col[i]];
    return x;
}

}  // namespace pd
