#pragma once

#include "painleve_d/loop_matrix.hpp"

#include <vector>

namespace pd {

using CartanMatrix = std::vector<std::vector<int>>;

CartanMatrix cartan_matrix(int n);
// null vector of the affine Cartan matrix: (1,1,2,...,2,1,1)
std::vector<int> marks(int n);
int num_nodes(int n);   // 2n+3
int matrix_size(int n); // 4n+4

// X_{i,j} = E_{i,j} - E_{N+1-j,N+1-i}, 1-based as printed
SparseMatrix<Rational> x_unit(int n, int i, int j);

struct ChevalleyBasis {
    int n = 0;
    std::vector<LoopMatrix<Rational>> E, F, H;  // index 0..2n+2
    SparseMatrix<Rational> J;
};

// generators of so(4n+4)[z,1/z] for the D^{(1)}_{2n+2} diagram; n >= 1
ChevalleyBasis build_chevalley(int n);

// shared instance per n (built once; immutable afterwards)
const ChevalleyBasis& chevalley(int n);

template <class T>
bool check_so_membership(const LoopMatrix<T>& a) {
    const int N = a.size();
    // JX + X^t J = 0  <=>  X_{c,b} = -X_{N-1-b,N-1-c} (0-based)
    for (auto& [d, m] : a.terms()) {
        for (auto& [k, v] : m.entries()) {
            T mirror = m.get(N - 1 - k.second, N - 1 - k.first);
            if (!is_zero(v + mirror)) return false;
        }
    }
    return true;
}

struct GradingOperator {
    int n = 0;
    int z_weight = 0;              // 2n+2
    std::vector<Rational> theta;   // theta_1..theta_{4n+4} at index 0..4n+3
    std::vector<int> degrees;      // deg E_j, j = 0..2n+2
};

GradingOperator grading_operator(int n);

// D(z^k A) = (2n+2)k z^k A + z^k [Theta, A]
template <class T>
LoopMatrix<T> apply_grading(const GradingOperator& g, const LoopMatrix<T>& a) {
    LoopMatrix<T> out(a.size());
    for (auto& [d, m] : a.terms())
        for (auto& [k, v] : m.entries()) {
            Rational w = Rational(g.z_weight * d) + g.theta[k.first] - g.theta[k.second];
            out.add(d, k.first, k.second, v * from_rational<T>(w));
        }
    return out;
}

// if a is homogeneous for the grading, returns its degree via *degree
bool homogeneous_degree(const GradingOperator& g, const LoopMatrix<Rational>& a, Rational* degree);

// (ad x)^k y
LoopMatrix<Rational> ad_power(const LoopMatrix<Rational>& x, const LoopMatrix<Rational>& y, int k);

}  // namespace pd
