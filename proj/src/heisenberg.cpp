#include "painleve_d/heisenberg.hpp"

#include <stdexcept>

namespace pd {

HeisenbergElement lambda_one(int n, int which) {
    if (which != 1 && which != 2) throw std::invalid_argument("which must be 1 or 2");
    const auto& b = chevalley(n);
    const auto& E = b.E;
    LoopMatrix<Rational> v(matrix_size(n));
    if (which == 1) {
        v += E[0];
        v += bracket(E[1], E[2]);
        for (int j = 3; j <= 2 * n - 1; j += 2) {
            v += E[j];
            v += bracket(E[j - 1], bracket(E[j], E[j + 1]));
        }
        v += E[2 * n + 1];
        v += bracket(E[2 * n], E[2 * n + 2]);
    } else {
        v += E[1];
        v += bracket(E[0], E[2]);
        for (int j = 3; j <= 2 * n - 1; j += 2) {
            v += bracket(E[j - 1], E[j]);
            v += bracket(E[j], E[j + 1]);
        }
        v += E[2 * n + 2];
        v += bracket(E[2 * n], E[2 * n + 1]);
    }
    return {0, 1, which, v};
}

HeisenbergElement lambda_general(int n, int k, int l, int which) {
    if (l < 1 || l > 2 * n + 1 || l % 2 == 0)
        throw std::invalid_argument("l must be odd in 1.." + std::to_string(2 * n + 1));
    auto base = lambda_one(n, which).value;
    LoopMatrix<Rational> v = base;
    for (int i = 1; i < l; ++i) v = v * base;
    return {k, l, which, v.shifted(k)};
}

std::vector<HeisenbergElement> heisenberg_family(int n, const std::vector<int>& ks) {
    std::vector<HeisenbergElement> out;
    for (int k : ks)
        for (int l = 1; l <= 2 * n + 1; l += 2)
            for (int w = 1; w <= 2; ++w) out.push_back(lambda_general(n, k, l, w));
    return out;
}

}  // namespace pd
