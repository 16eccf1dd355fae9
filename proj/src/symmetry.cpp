#include "painleve_d/symmetry.hpp"

#include <sstream>

namespace pd {

int sigma(int k, int n, int j) {
    if (k == 1) {
        if (j == 0) return 1;
        if (j == 1) return 0;
        if (j == 2 * n + 1) return 2 * n + 2;
        if (j == 2 * n + 2) return 2 * n + 1;
        return j;
    }
    if (k == 2) return 2 * n + 2 - j;
    throw std::invalid_argument("automorphism index must be 1 or 2");
}

WeylWord parse_word(const std::string& text, int n) {
    WeylWord w;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        while (!tok.empty() && tok.front() == ' ') tok.erase(tok.begin());
        while (!tok.empty() && tok.back() == ' ') tok.pop_back();
        if (tok.empty()) continue;
        if (tok.size() < 2 || (tok[0] != 'r' && tok[0] != 'p'))
            throw std::invalid_argument("bad word token \"" + tok + "\"");
        int idx;
        try {
            size_t used = 0;
            idx = std::stoi(tok.substr(1), &used);
            if (used != tok.size() - 1) throw std::invalid_argument("");
        } catch (...) {
            throw std::invalid_argument("bad word token \"" + tok + "\"");
        }
        WeylToken t;
        t.kind = tok[0] == 'r' ? WeylToken::reflection : WeylToken::automorphism;
        t.index = idx;
        if (t.kind == WeylToken::reflection && (idx < 0 || idx > 2 * n + 2))
            throw std::invalid_argument("reflection index out of range in \"" + tok + "\"");
        if (t.kind == WeylToken::automorphism && idx != 1 && idx != 2)
            throw std::invalid_argument("automorphism must be p1 or p2, got \"" + tok + "\"");
        w.push_back(t);
    }
    return w;
}

std::string word_to_string(const WeylWord& w) {
    std::string out;
    for (size_t i = 0; i < w.size(); ++i) out += (i ? "," : "") + w[i].str();
    return out;
}

bool equivariance_check(const WeylToken& g, const SystemParams<Rational>& prm, const PhaseState<Rational>& st,
                        NodeConvention conv, HamiltonianForm form) {
    using D = Dual<Rational>;
    const int n = prm.n;
    auto [vq, vp] = vector_field(st, prm, form);
    PhaseState<D> x;
    x.s = D(st.s, Rational(1));
    for (int i = 0; i < n; ++i) {
        x.q.push_back(D(st.q[i], vq[i]));
        x.p.push_back(D(st.p[i], vp[i]));
    }
    auto dprm = prm.cast<D>();
    auto [np, ns] = apply_generator(g, dprm, x, conv);

    SystemParams<Rational> img_prm{n, {}};
    for (auto& a : np.alpha) img_prm.alpha.push_back(a.v);
    PhaseState<Rational> img;
    img.s = ns.s.v;
    for (int i = 0; i < n; ++i) {
        img.q.push_back(ns.q[i].v);
        img.p.push_back(ns.p[i].v);
    }
    if (!(ns.s.d == Rational(1))) return false;
    auto [wq, wp] = vector_field(img, img_prm, form);
    for (int i = 0; i < n; ++i)
        if (!(ns.q[i].d == wq[i]) || !(ns.p[i].d == wp[i])) return false;
    return true;
}

}  // namespace pd
