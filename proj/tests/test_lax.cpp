#include "helpers.hpp"

using namespace pdtest;

TEST_SUITE("lax") {
    TEST_CASE("epsilon solve") {
        auto ev = solve_epsilon(uniform_params(1), R(0));
        std::vector<R> want{r(0), r(1, 2), r(5, 6), r(1, 2), r(1, 2)};
        CHECK(ev.eps == want);
        for (bool ok : check_printed_epsilon_relations(uniform_params(1), ev)) CHECK(ok);
        auto bad = uniform_params(1);
        bad.alpha[0] += R(1);
        CHECK_THROWS(solve_epsilon(bad, R(0)));
        for (int n = 2; n <= 3; ++n) {
            auto p = uniform_params(n);
            for (bool ok : check_printed_epsilon_relations(p, solve_epsilon(p, r(1, 3)))) CHECK(ok);
        }
    }

    TEST_CASE("diagonal solve") {
        std::vector<R> v{r(-2), r(0), r(1), r(0), r(0)};
        std::vector<R> d{r(1), r(1), r(0), r(0)};
        CHECK(solve_diagonal(1, v) == d);
        CHECK(solve_diagonal(1, std::vector<R>(5, R(0))) == std::vector<R>(4, R(0)));
        CHECK_THROWS_AS(solve_diagonal(1, std::vector<R>{r(1), r(0), r(0), r(0), r(0)}), PairingInconsistentError);
        // the element reproduces its pairings
        const auto& b = chevalley(1);
        auto u = diagonal_element(1, d);
        for (int j = 0; j < 5; ++j) CHECK(invariant_form(u, b.H[j]) == v[j]);
    }

    TEST_CASE("M pairings") {
        for (int n = 1; n <= 3; ++n) {
            auto rng = trial_rng(21, n);
            auto prm = random_params(n, rng);
            auto st = random_state(n, rng);
            auto ev = solve_epsilon(prm, r(-2, 5));
            auto M = build_M(st, prm, ev);
            const auto& b = chevalley(n);
            for (int j = 0; j < num_nodes(n); ++j)
                CHECK(invariant_form(M, b.H[j]) == prm.alpha[j] - R(j == 0 ? 1 : 0));
            CHECK(invariant_form(M, b.F[0]) == R(1, 2 * n + 2));
        }
    }

    TEST_CASE("B coefficients at q=2, p=6, s=3") {
        auto prm = uniform_params(1);
        auto st = state(r(3), {r(2)}, {r(6)});
        auto c = printed_coefficients(st, prm);
        CHECK(c.x[3] == R(-4));
        CHECK(c.y[3] == r(3, 4));
        // B is the negative of the printed assembly
        auto B = build_B(st, prm);
        const auto& b = chevalley(1);
        CHECK(invariant_form(B, b.F[3]) == R(4));
        auto mk = marks(1);
        R sum(0);
        for (int j = 0; j < 5; ++j) sum += R(mk[j]) * c.v[j];
        CHECK(sum.is_zero());
    }

    TEST_CASE("compatibility residual vanishes") {
        for (int n = 1; n <= 3; ++n)
            for (int k = 0; k < 10; ++k) {
                auto rng = trial_rng(31, k, n);
                auto prm = random_params(n, rng);
                auto st = random_state(n, rng);
                auto ev = solve_epsilon(prm, random_rational(rng));
                CHECK(compatibility_residual(st, prm, ev).is_zero_matrix());
            }
    }

    TEST_CASE("residual controls") {
        auto rng = trial_rng(41, 0);
        auto prm = random_params(2, rng);
        auto st = random_state(2, rng);
        auto ev = solve_epsilon(prm, R(0));
        auto [dq, dp] = scaled_vector_field(st, prm);
        auto moved = st;
        moved.p[0] += R(1);
        CHECK_FALSE(residual_with_rates(moved, prm, ev, dq, dp).is_zero_matrix());
        std::vector<R> zero(2, R(0));
        CHECK_FALSE(residual_with_rates(st, prm, ev, zero, zero).is_zero_matrix());

        // each correction is needed on its own
        LaxTranscription no_sign, no_x, no_u;
        no_sign.fix_sign = false;
        no_x.fix_x = false;
        no_u.fix_u = false;
        for (auto tr : {no_sign, no_x, no_u, LaxTranscription::literal()}) {
            bool rejected;
            try {
                rejected = !compatibility_residual(st, prm, ev, tr).is_zero_matrix();
            } catch (const PairingInconsistentError&) {
                rejected = true;
            }
            CHECK(rejected);
        }
        // and the typeset Hamiltonian does not solve the Lax equation for n >= 2
        CHECK_FALSE(compatibility_residual(st, prm, ev, {}, HamiltonianForm::printed).is_zero_matrix());
    }

    TEST_CASE("converse direction") {
        for (int n = 1; n <= 2; ++n)
            for (int k = 0; k < 5; ++k) {
                auto rng = trial_rng(51, k, n);
                auto prm = random_params(n, rng);
                auto st = random_state(n, rng);
                auto [cq, cp] = converse_rates(st, prm, solve_epsilon(prm, R(0)));
                auto [dq, dp] = scaled_vector_field(st, prm);
                CHECK(cq == dq);
                CHECK(cp == dp);
            }
    }

    TEST_CASE("Poisson structure from the form") {
        auto rng = trial_rng(61, 0);
        auto prm = random_params(1, rng);
        auto st = random_state(1, rng);
        auto ev = solve_epsilon(prm, R(0));
        R v = poisson_from_form(2, 1, st, prm, ev);
        CHECK((v == r(1, 4) || v == r(-1, 4)));
        CHECK(v == canonical_phi_bracket(1, 2, 1));
        for (int j = 0; j < 5; ++j) CHECK(poisson_from_form(0, j, st, prm, ev).is_zero());
    }

    TEST_CASE("lax suite") {
        for (int n = 1; n <= 2; ++n) {
            SuiteOptions opt;
            opt.n = n;
            opt.trials = 10;
            opt.seed = 3;
            check_report(run_suite("lax", opt));
        }
    }
}
