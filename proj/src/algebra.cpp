#include "painleve_d/algebra.hpp"

#include <memory>
#include <mutex>
#include <stdexcept>

namespace pd {

int num_nodes(int n) { return 2 * n + 3; }
int matrix_size(int n) { return 4 * n + 4; }

static void require_rank(int n) {
    if (n < 1) throw std::invalid_argument("n must be >= 1 (got " + std::to_string(n) + ")");
}

CartanMatrix cartan_matrix(int n) {
    require_rank(n);
    const int m = num_nodes(n);
    CartanMatrix a(m, std::vector<int>(m, 0));
    for (int i = 0; i < m; ++i) a[i][i] = 2;
    auto link = [&](int i, int j) { a[i][j] = a[j][i] = -1; };
    link(0, 2);
    for (int i = 1; i <= 2 * n; ++i) link(i, i + 1);
    link(2 * n, 2 * n + 2);
    return a;
}

std::vector<int> marks(int n) {
    require_rank(n);
    std::vector<int> m(num_nodes(n), 2);
    m[0] = m[1] = m[2 * n + 1] = m[2 * n + 2] = 1;
    return m;
}

SparseMatrix<Rational> x_unit(int n, int i, int j) {
    const int N = matrix_size(n);
    SparseMatrix<Rational> m(N);
    m.add(i - 1, j - 1, Rational(1));
    m.add(N - j, N - i, Rational(-1));
    return m;
}

ChevalleyBasis build_chevalley(int n) {
    require_rank(n);
    const int N = matrix_size(n);
    const int nodes = num_nodes(n);
    ChevalleyBasis b;
    b.n = n;
    b.E.resize(nodes);
    b.F.resize(nodes);
    b.H.resize(nodes);
    using LM = LoopMatrix<Rational>;
    b.E[0] = LM(1, x_unit(n, 4 * n + 3, 1));
    b.F[0] = LM(-1, x_unit(n, 1, 4 * n + 3));
    for (int i = 1; i <= 2 * n + 1; ++i) {
        b.E[i] = LM(0, x_unit(n, i, i + 1));
        b.F[i] = LM(0, x_unit(n, i + 1, i));
        b.H[i] = LM(0, x_unit(n, i, i) - x_unit(n, i + 1, i + 1));
    }
    b.E[2 * n + 2] = LM(0, x_unit(n, 2 * n + 1, 2 * n + 3));
    b.F[2 * n + 2] = LM(0, x_unit(n, 2 * n + 3, 2 * n + 1));
    b.H[0] = LM(0, x_unit(n, 1, 1) * Rational(-1) - x_unit(n, 2, 2));
    b.H[2 * n + 2] = LM(0, x_unit(n, 2 * n + 1, 2 * n + 1) + x_unit(n, 2 * n + 2, 2 * n + 2));
    b.J = SparseMatrix<Rational>(N);
    for (int i = 0; i < N; ++i) b.J.set(i, N - 1 - i, Rational(1));
    return b;
}

const ChevalleyBasis& chevalley(int n) {
    require_rank(n);
    static std::mutex mu;
    static std::map<int, std::unique_ptr<ChevalleyBasis>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<ChevalleyBasis>(build_chevalley(n));
    return *slot;
}

GradingOperator grading_operator(int n) {
    require_rank(n);
    GradingOperator g;
    g.n = n;
    g.z_weight = 2 * n + 2;
    const int nodes = num_nodes(n);
    g.degrees.assign(nodes, 1);
    for (int j = 2; j <= 2 * n; j += 2) g.degrees[j] = 0;

    const int N = matrix_size(n);
    std::vector<Rational> th(N + 1);  // 1-based scratch
    // theta_{2n+1} - theta_{2n+2} = deg E_{2n+1} and theta_{2n+1} + theta_{2n+2} = 1
    Rational sum(1), diff(g.degrees[2 * n + 1]);
    th[2 * n + 1] = (sum + diff) / Rational(2);
    th[2 * n + 2] = (sum - diff) / Rational(2);
    for (int i = 2 * n; i >= 1; --i) th[i] = th[i + 1] + Rational(g.degrees[i]);
    for (int i = 1; i <= 2 * n + 2; ++i) th[N + 1 - i] = -th[i];
    if (!(th[1] + th[2] == Rational(2 * n + 1)))
        throw std::logic_error("grading constraints inconsistent");
    g.theta.assign(th.begin() + 1, th.end());

    const auto& b = chevalley(n);
    for (int j = 0; j < nodes; ++j) {
        if (!(apply_grading(g, b.E[j]) == b.E[j] * Rational(g.degrees[j])))
            throw std::logic_error("grading does not match generator degree");
    }
    return g;
}

bool homogeneous_degree(const GradingOperator& g, const LoopMatrix<Rational>& a, Rational* degree) {
    bool first = true;
    Rational w;
    for (auto& [d, m] : a.terms())
        for (auto& [k, v] : m.entries()) {
            Rational here = Rational(g.z_weight * d) + g.theta[k.first] - g.theta[k.second];
            if (first) { w = here; first = false; }
            else if (!(here == w)) return false;
        }
    if (degree) *degree = first ? Rational(0) : w;
    return true;
}

LoopMatrix<Rational> ad_power(const LoopMatrix<Rational>& x, const LoopMatrix<Rational>& y, int k) {
    LoopMatrix<Rational> out = y;
    for (int i = 0; i < k; ++i) out = bracket(x, out);
    return out;
}

}  // namespace pd
