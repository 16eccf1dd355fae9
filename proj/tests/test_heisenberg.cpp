#include "helpers.hpp"

using namespace pdtest;

TEST_SUITE("heisenberg") {
    TEST_CASE("Lambda_11 for n=1") {
        const auto& E = chevalley(1).E;
        auto want = E[0] + bracket(E[1], E[2]) + E[3] + bracket(E[2], E[4]);
        CHECK(lambda_one(1, 1).value == want);
        CHECK(bracket(lambda_one(1, 1).value, lambda_one(1, 2).value).is_zero_matrix());
    }

    TEST_CASE("Lambda_12 for n=2 carries the middle sum") {
        const auto& E = chevalley(2).E;
        auto want = E[1] + bracket(E[0], E[2]) + bracket(E[2], E[3]) + bracket(E[3], E[4]) + E[6] + bracket(E[4], E[5]);
        CHECK(lambda_one(2, 2).value == want);
    }

    TEST_CASE("general elements") {
        auto L = lambda_one(1, 1).value;
        auto cube = lambda_general(1, 0, 3, 1);
        CHECK(cube.value == L * L * L);
        CHECK(check_so_membership(cube.value));

        auto h = lambda_general(2, 1, 1, 2);
        CHECK(h.value == lambda_one(2, 2).value.shifted(1));
        CHECK(h.declared_degree(2) == 7);
        Rational d;
        CHECK(homogeneous_degree(grading_operator(2), h.value, &d));
        CHECK(d == R(7));

        CHECK_THROWS(lambda_general(1, 0, 2, 1));
        CHECK_THROWS(lambda_general(1, 0, 5, 1));
    }

    TEST_CASE("heisenberg suite") {
        for (int n = 1; n <= 2; ++n) {
            SuiteOptions opt;
            opt.n = n;
            check_report(run_suite("heisenberg", opt));
        }
    }
}
