#include "helpers.hpp"

using namespace pdtest;

TEST_SUITE("painleve") {
    TEST_CASE("derived betas") {
        SystemParams<R> p2{2, {r(1, 11), r(2, 11), r(3, 11), r(5, 11), r(7, 11), r(-13, 11), r(-29, 11)}};
        auto b = derived_betas(p2);
        const auto& a = p2.alpha;
        CHECK(b.b3[0] == a[3] + R(2) * a[4] + a[5]);
        CHECK(b.b4[0] == a[3] + a[6]);

        SystemParams<R> p1{1, {r(1, 2), r(1, 3), r(-1, 7), r(1, 5), r(2, 9)}};
        auto c = derived_betas(p1);
        CHECK(c.b0[0] == p1.alpha[1]);
        CHECK(c.b1[0] == p1.alpha[0]);
        CHECK(c.b3[0] == p1.alpha[3]);
        CHECK(c.b4[0] == p1.alpha[4]);

        auto u = uniform_params(1);
        CHECK(u.normalized());
    }

    TEST_CASE("beta sum identity up to n=4") {
        for (int n = 1; n <= 4; ++n)
            for (int k = 0; k < 20; ++k) {
                auto rng = trial_rng(5, k, n);
                auto prm = random_params(n, rng);
                auto b = derived_betas(prm);
                for (int i = 0; i < n; ++i)
                    CHECK(b.b0[i] + b.b1[i] + R(2) * prm.alpha[2 * i + 2] + b.b3[i] + b.b4[i] == R(1));
            }
    }

    TEST_CASE("Hamiltonian at p = 0") {
        // the momentum-free term is alpha_2 (alpha_2 + beta_{1,1}) q, beta_{1,1} = alpha_0 for n = 1
        SystemParams<R> p1{1, {r(1, 2), r(1, 3), r(-1, 7), r(1, 5), r(2, 9)}};
        p1.alpha[0] = R(1) - p1.alpha[1] - R(2) * p1.alpha[2] - p1.alpha[3] - p1.alpha[4];
        auto st = state(r(3), {r(2)}, {r(0)});
        const auto& a = p1.alpha;
        CHECK(hamiltonian(st, p1) == R(2) * a[2] * (a[2] + a[0]));
        CHECK(hamiltonian(st, p1, HamiltonianForm::printed) == R(2) * a[2] * (a[2] + a[1]));

        auto rng = trial_rng(3, 0);
        auto p2 = random_params(2, rng);
        auto s2 = random_state(2, rng);
        s2.p = {r(0), r(0)};
        auto b = derived_betas(p2);
        const auto& a2 = p2.alpha;
        R want = a2[2] * (a2[2] + b.b1[0]) * s2.q[0] + a2[4] * (a2[4] + b.b1[1]) * s2.q[1];
        CHECK(hamiltonian(s2, p2) == want);
    }

    TEST_CASE("Hamiltonian against a hand expansion") {
        auto prm = uniform_params(1);
        R q = r(2), p = r(1), s = r(3), a = r(1, 6);
        // beta_{1,*} all 1/6 here, so both forms agree
        R want = q * (q - 1) * (q - s) * p * p - ((a - 1) * q * (q - 1) + a * (q - 1) * (q - s) + a * q * (q - s)) * p +
                 a * (a + a) * q;
        CHECK(hamiltonian(state(s, {q}, {p}), prm) == want);
        CHECK(hamiltonian(state(s, {q}, {p}), prm, HamiltonianForm::printed) == want);
    }

    TEST_CASE("vector field at p = 0, alpha_2 = 0") {
        SystemParams<R> prm{1, {r(0), r(1, 3), r(0), r(1, 5), r(2, 9)}};
        prm.alpha[0] = R(1) - prm.alpha[1] - prm.alpha[3] - prm.alpha[4];
        R q = r(-3, 2), s = r(5, 2);
        auto [dq, dp] = scaled_vector_field(state(s, {q}, {r(0)}), prm);
        const auto& a = prm.alpha;
        // corrected roles: beta_{1,0} = alpha_1 on q(q-1), beta_{1,4} = alpha_4 on (q-1)(q-s)
        CHECK(dq[0] == -((a[1] - 1) * q * (q - 1) + a[4] * (q - 1) * (q - s) + a[3] * q * (q - s)));
        CHECK(dp[0].is_zero());
        auto [pq, pp] = scaled_vector_field(state(s, {q}, {r(0)}), prm, HamiltonianForm::printed);
        CHECK(pq[0] == -((a[0] - 1) * q * (q - 1) + a[3] * (q - 1) * (q - s) + a[4] * q * (q - s)));
        CHECK(pp[0].is_zero());
    }

    TEST_CASE("Riccati locus is invariant") {
        SuiteOptions opt;
        opt.trials = 50;
        for (int n = 1; n <= 3; ++n) {
            opt.n = n;
            check_report(run_suite("hamiltonian", opt));
        }
    }

    TEST_CASE("vector field matches finite differences") {
        SystemParams<double> prm{1, {0.65, 0.1, -0.05, 0.15, 0.2}};
        PhaseState<double> st{3.0, {2.0}, {6.0}};
        auto [dq, dp] = scaled_vector_field(st, prm);
        const double h = 1e-6;
        auto H = [&](double q, double p) { return hamiltonian(PhaseState<double>{3.0, {q}, {p}}, prm); };
        CHECK(dq[0] == doctest::Approx((H(2, 6 + h) - H(2, 6 - h)) / (2 * h)).epsilon(1e-6));
        CHECK(dp[0] == doctest::Approx(-(H(2 + h, 6) - H(2 - h, 6)) / (2 * h)).epsilon(1e-6));
        CHECK_THROWS_AS(vector_field(PhaseState<double>{1.0, {2.0}, {1.0}}, prm), SingularTimeError);
    }

    TEST_CASE("phi coordinates") {
        auto st = state(r(3), {r(2)}, {r(6)});
        auto phi = phi_coords(st);
        std::vector<R> want{r(1, 4), r(-1), r(-3, 2), r(-1), r(-2)};
        CHECK(phi == want);
        CHECK(phi_to_state(1, phi, st.s) == st);

        for (int n = 1; n <= 3; ++n)
            for (auto conv : all_conventions())
                for (int k = 0; k < 10; ++k) {
                    auto rng = trial_rng(9, k, n);
                    auto s = random_state(n, rng);
                    CHECK(phi_to_state(n, phi_coords(s, conv), s.s, conv) == s);
                }

        auto bad = phi;
        bad[3] = bad[4] + R(2);
        CHECK_THROWS_AS(phi_to_state(1, bad, st.s), PhiMismatchError);
        auto off = phi;
        off[0] = r(1, 3);
        CHECK_THROWS_AS(phi_to_state(1, off, st.s), PhiMismatchError);
    }

    TEST_CASE("conventions") {
        for (auto c : all_conventions()) CHECK(NodeConvention::parse(c.name()) == c);
        CHECK_THROWS(NodeConvention::parse("swap12"));
        NodeConvention both{true, true};
        CHECK(both.slot(1, 0) == 1);
        CHECK(both.slot(1, 3) == 4);
        CHECK(both.slot(1, 2) == 2);
    }

    TEST_CASE("Poisson bracket orientation") {
        auto phis = phi_polynomials<R>(1);
        // {p, q} = 1
        Poly<R> q = Poly<R>::variable(3, 0), p = Poly<R>::variable(3, 1);
        auto br = poisson_bracket(1, p, q);
        CHECK(br.eval(std::vector<R>{r(0), r(0), r(0)}) == R(1));
        CHECK(canonical_phi_bracket(1, 2, 1) == r(-1, 4));
    }
}
