#include "helpers.hpp"

using namespace pdtest;

TEST_SUITE("algebra") {
    TEST_CASE("E2 for n=1 is X_{2,3}") {
        const auto& b = chevalley(1);
        auto E2 = b.E[2];
        CHECK(E2.size() == 8);
        CHECK(E2 == LoopMatrix<R>(0, x_unit(1, 2, 3)));
        auto c = E2.coefficient(0);
        CHECK(c.get(1, 2) == R(1));
        CHECK(c.get(5, 6) == R(-1));
        CHECK(c.entries().size() == 2);
    }

    TEST_CASE("marks-weighted Cartan elements vanish") {
        for (int n = 1; n <= 3; ++n) {
            const auto& b = chevalley(n);
            auto mk = marks(n);
            LoopMatrix<R> sum(matrix_size(n));
            for (int i = 0; i < num_nodes(n); ++i) sum += b.H[i] * R(mk[i]);
            CHECK(sum.is_zero_matrix());
        }
    }

    TEST_CASE("off-diagonal Chevalley pair commutes") {
        const auto& b = chevalley(2);
        CHECK(b.E[1].size() == 12);
        CHECK(bracket(b.E[1], b.F[2]).is_zero_matrix());
    }

    TEST_CASE("brackets") {
        const auto& b = chevalley(1);
        CHECK(bracket(b.E[1], b.F[1]) == b.H[1]);
        CHECK(bracket(b.E[0], b.F[0]) == b.H[0]);
        CHECK(b.E[0].degree_range().first == 1);
        auto a = b.E[0] * r(3, 2) + b.F[3] * r(-2) + b.H[2];
        CHECK(bracket(a, a).is_zero_matrix());
    }

    TEST_CASE("invariant form pairings") {
        for (int n = 1; n <= 2; ++n) {
            const auto& b = chevalley(n);
            auto A = cartan_matrix(n);
            for (int i = 0; i < num_nodes(n); ++i)
                for (int j = 0; j < num_nodes(n); ++j) {
                    CHECK(invariant_form(b.E[i], b.F[j]) == R(i == j ? 1 : 0));
                    CHECK(invariant_form(b.H[i], b.H[j]) == R(A[i][j]));
                }
            CHECK(invariant_form(b.E[0], b.E[0]).is_zero());
        }
    }

    TEST_CASE("Cartan matrix") {
        CartanMatrix want{{2, 0, -1, 0, 0}, {0, 2, -1, 0, 0}, {-1, -1, 2, -1, -1}, {0, 0, -1, 2, 0}, {0, 0, -1, 0, 2}};
        CHECK(cartan_matrix(1) == want);
        for (int n = 1; n <= 5; ++n) {
            auto A = cartan_matrix(n);
            auto mk = marks(n);
            for (int i = 0; i < num_nodes(n); ++i) {
                int row = 0;
                for (int j = 0; j < num_nodes(n); ++j) {
                    row += A[i][j] * mk[j];
                    CHECK(A[i][j] == A[j][i]);
                }
                CHECK(row == 0);
            }
        }
        auto A2 = cartan_matrix(2);
        CHECK(A2[3][4] == -1);
        CHECK(A2[4][3] == -1);
        CHECK_THROWS(build_chevalley(0));
    }

    TEST_CASE("so membership") {
        CHECK(check_so_membership(LoopMatrix<R>(0, x_unit(1, 1, 2))));
        CHECK_FALSE(check_so_membership(LoopMatrix<R>::unit(8, 0, 0, 1)));
        auto L = lambda_one(1, 1).value;
        CHECK(check_so_membership(L));
        CHECK_FALSE(check_so_membership(L * L));
    }

    TEST_CASE("grading operator") {
        const auto& b = chevalley(1);
        auto g = grading_operator(1);
        CHECK(apply_grading(g, b.E[2]).is_zero_matrix());
        CHECK(apply_grading(g, b.E[0]) == b.E[0]);
        auto L = lambda_one(1, 1).value;
        CHECK(apply_grading(g, L) == L);
        for (int n = 1; n <= 3; ++n) {
            auto gn = grading_operator(n);
            CHECK(gn.theta[0] + gn.theta[1] == R(2 * n + 1));
        }
    }

    TEST_CASE("algebra suite") {
        for (int n = 1; n <= 3; ++n) {
            SuiteOptions opt;
            opt.n = n;
            opt.trials = 200;
            opt.seed = 11;
            check_report(run_suite("algebra", opt));
        }
    }
}
