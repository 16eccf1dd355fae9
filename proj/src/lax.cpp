#include "painleve_d/lax.hpp"

#include <memory>
#include <mutex>
#include <tuple>

namespace pd {

static LaxFrame make_frame(int n) {
    const auto& b = chevalley(n);
    const auto& E = b.E;
    LaxFrame f;
    f.n = n;
    const int N = matrix_size(n);
    f.cross = LoopMatrix<Rational>(N);
    f.eii.assign(2 * n + 1, LoopMatrix<Rational>(N));
    for (int i = 1; i <= 2 * n; ++i) {
        f.eii[i] = bracket(E[i], E[i + 1]);
        f.cross += f.eii[i];
    }
    f.e2n_2n2 = bracket(E[2 * n], E[2 * n + 2]);
    f.cross += f.e2n_2n2;
    f.e02 = bracket(E[0], E[2]);
    f.triples = LoopMatrix<Rational>(N);
    for (int j = 3; j <= 2 * n - 1; j += 2) f.triples += bracket(E[j - 1], bracket(E[j], E[j + 1]));
    return f;
}

const LaxFrame& lax_frame(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<LaxFrame>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<LaxFrame>(make_frame(n));
    return *slot;
}

Rational canonical_phi_bracket(int n, int i, int j, NodeConvention conv) {
    auto phis = phi_polynomials<Rational>(n, conv);
    auto br = poisson_bracket(n, phis.at(i), phis.at(j));
    // the dictionary is affine-linear, so the bracket is a constant
    Rational c(0);
    for (auto& [m, v] : br.terms()) {
        for (int e : m)
            if (e != 0) throw std::logic_error("phi bracket is not constant");
        c += v;
    }
    return c;
}

const std::vector<std::vector<Rational>>& phi_bracket_table(int n, NodeConvention conv) {
    static std::mutex mu;
    static std::map<std::tuple<int, bool, bool>, std::unique_ptr<std::vector<std::vector<Rational>>>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[{n, conv.swap01, conv.swapTail}];
    if (!slot) {
        const int m = 2 * n + 3;
        slot = std::make_unique<std::vector<std::vector<Rational>>>(m, std::vector<Rational>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) (*slot)[i][j] = canonical_phi_bracket(n, i, j, conv);
    }
    return *slot;
}

}  // namespace pd
