#include "helpers.hpp"

using namespace pdtest;

namespace {
SystemParams<R> sample_params() {
    SystemParams<R> p{1, {r(0), r(1, 3), r(-1, 7), r(1, 5), r(2, 9)}};
    p.alpha[0] = R(1) - p.alpha[1] - R(2) * p.alpha[2] - p.alpha[3] - p.alpha[4];
    return p;
}
WeylToken refl(int i) { return {WeylToken::reflection, i}; }
WeylToken pik(int k) { return {WeylToken::automorphism, k}; }
}  // namespace

TEST_SUITE("symmetry") {
    TEST_CASE("parameter reflections") {
        auto p = sample_params();
        const auto& a = p.alpha;
        auto r2 = reflect_params(2, p);
        std::vector<R> want{a[0] + a[2], a[1] + a[2], -a[2], a[3] + a[2], a[4] + a[2]};
        CHECK(r2.alpha == want);
        auto r0 = reflect_params(0, p);
        std::vector<R> want0{-a[0], a[1], a[2] + a[0], a[3], a[4]};
        CHECK(r0.alpha == want0);
        for (int i = 0; i < 5; ++i) CHECK(reflect_params(i, reflect_params(i, p)) == p);
    }

    TEST_CASE("birational reflections, n=1") {
        auto p = sample_params();
        auto st = state(r(5, 2), {r(-3, 4)}, {r(7, 3)});
        R q = st.q[0], pp = st.p[0], s = st.s;

        auto [p2, s2] = reflect_state_birational(2, p, st);
        CHECK(s2.q[0] == q + p.alpha[2] / pp);
        CHECK(s2.p[0] == pp);

        // node 1 carries phi = q - s
        auto [p1, s1] = reflect_state_birational(1, p, st);
        CHECK(s1.q[0] == q);
        CHECK(s1.p[0] == pp - p.alpha[1] / (q - s));

        // node 0 carries the constant phi_0
        auto [p0, s0] = reflect_state_birational(0, p, st);
        CHECK(s0 == st);
        CHECK(equivariance_check(refl(0), p, st));
    }

    TEST_CASE("matrix reflections") {
        auto p = sample_params();
        auto st = state(r(5, 2), {r(-3, 4)}, {r(7, 3)});
        auto [pm, sm] = reflect_matrix(2, p, st);
        CHECK(sm.q[0] == st.q[0] + p.alpha[2] / st.p[0]);
        for (int i = 0; i < 5; ++i) {
            auto once = reflect_matrix(i, p, st);
            auto twice = reflect_matrix(i, once.first, once.second);
            CHECK(twice.first == p);
            CHECK(twice.second == st);
            auto bir = reflect_state_birational(i, p, st);
            CHECK(once.first == bir.first);
            CHECK(once.second == bir.second);
        }
        // a nonzero gauge for eps_0 does not change the extracted data
        auto g = reflect_matrix(3, p, st, r(2, 7));
        CHECK(g == reflect_matrix(3, p, st));
    }

    TEST_CASE("automorphisms") {
        auto p = uniform_params(1);
        auto st = state(r(3), {r(2)}, {r(6)});
        auto [pp, s1] = automorphism_pi(1, p, st);
        CHECK(s1.q[0] == R(-3));
        CHECK(s1.p[0] == r(-35, 36));
        for (int k = 0; k < 10; ++k) {
            auto rng = trial_rng(4, k);
            for (int n = 1; n <= 2; ++n) {
                auto prm = random_params(n, rng);
                auto x = random_state(n, rng);
                CHECK(apply_word({pik(2), pik(2)}, prm, x) == Transformed<R>{prm, x});
                // pi_1 and pi_2 commute: the product is an involution, so its cube is itself
                auto once = apply_word({pik(1), pik(2)}, prm, x);
                CHECK(once == apply_word({pik(2), pik(1)}, prm, x));
                CHECK(apply_word({pik(1), pik(2), pik(1), pik(2)}, prm, x) == Transformed<R>{prm, x});
                CHECK(apply_word({pik(1), pik(2), pik(1), pik(2), pik(1), pik(2)}, prm, x) == once);
                CHECK_FALSE(once == Transformed<R>{prm, x});
            }
        }
        CHECK(sigma(1, 1, 0) == 1);
        CHECK(sigma(1, 1, 4) == 3);
        CHECK(sigma(2, 2, 1) == 5);
    }

    TEST_CASE("words") {
        auto p = sample_params();
        auto st = state(r(5, 2), {r(-3, 4)}, {r(7, 3)});
        CHECK(apply_word({}, p, st) == Transformed<R>{p, st});
        for (int i = 0; i < 5; ++i) CHECK(apply_word({refl(i), refl(i)}, p, st) == Transformed<R>{p, st});
        CHECK(word_to_string(parse_word("r0, r3,p1", 1)) == "r0,r3,p1");
        CHECK(parse_word("", 1).empty());
        CHECK_THROWS(parse_word("r5", 1));
        CHECK_THROWS(parse_word("p3", 1));
        CHECK_THROWS(parse_word("x1", 1));
        CHECK_THROWS(parse_word("r1a", 1));

        auto zero_p = state(r(5, 2), {r(-3, 4)}, {r(0)});
        try {
            apply_word(parse_word("r0,r2", 1), p, zero_p);
            FAIL("expected a pole");
        } catch (const PoleError& e) {
            CHECK(e.node == 2);
            CHECK(e.step == 2);
        }
    }

    TEST_CASE("equivariance for every generator") {
        for (int n = 1; n <= 2; ++n)
            for (int k = 0; k < 5; ++k) {
                auto rng = trial_rng(8, k, n);
                auto prm = random_params(n, rng);
                auto st = random_state(n, rng);
                CHECK(equivariance_check(pik(1), prm, st));
                CHECK(equivariance_check(pik(2), prm, st));
                for (int i = 0; i < num_nodes(n); ++i) CHECK(equivariance_check(refl(i), prm, st));
            }
    }

    TEST_CASE("typeset Hamiltonian breaks equivariance for n=2") {
        auto rng = trial_rng(2, 0);
        auto prm = random_params(2, rng);
        auto st = random_state(2, rng);
        bool all = true;
        for (int i = 0; i < num_nodes(2); ++i)
            all = all && equivariance_check(refl(i), prm, st, {}, HamiltonianForm::printed);
        CHECK_FALSE(all);
    }

    TEST_CASE("convention oracle at n=1") {
        // only the printed dictionary keeps the reflections symmetries of the flow
        std::vector<std::string> passing;
        for (auto conv : all_conventions()) {
            bool ok = true;
            for (int k = 0; k < 5 && ok; ++k) {
                auto rng = trial_rng(12, k);
                auto prm = random_params(1, rng);
                auto st = random_state(1, rng);
                for (int i = 0; i < 5 && ok; ++i) ok = equivariance_check(refl(i), prm, st, conv);
            }
            if (ok) passing.push_back(conv.name());
        }
        CHECK(passing == std::vector<std::string>{"as-printed"});
    }

    TEST_CASE("weyl suite") {
        for (int n = 1; n <= 2; ++n) {
            SuiteOptions opt;
            opt.n = n;
            opt.trials = 10;
            auto rep = run_suite("weyl", opt);
            for (auto& p : rep.properties) {
                INFO(p.name << ": " << p.counterexample);
                CHECK(p.pass == (p.name != "(pi_1 pi_2)^3"));
            }
        }
    }
}
