#include "helpers.hpp"

#include <cstdlib>

using namespace pdtest;

namespace {
struct Fixture {
    SystemParams<double> prm;
    PhaseState<double> st;
};
Fixture fixture(int n, std::uint64_t seed = 1) {
    auto rng = trial_rng(seed, 0, 97);
    return {flow_params(n, rng).cast<double>(), flow_state(n, rng).cast<double>()};
}
double gap(const PhaseState<double>& a, const PhaseState<double>& b) {
    double g = 0;
    for (int i = 0; i < a.n(); ++i) g = std::max({g, std::abs(a.q[i] - b.q[i]), std::abs(a.p[i] - b.p[i])});
    return g;
}
}  // namespace

TEST_SUITE("flow") {
    TEST_CASE("dense output on y' = y") {
        OdeRhs<double> f = [](double, const std::vector<double>& y, std::vector<double>& dy) { dy = y; };
        auto sol = dopri5(f, 0.0, std::vector<double>{1.0}, 2.0, IntegratorConfig{});
        CHECK(sol.y.back()[0] == doctest::Approx(std::exp(2.0)).epsilon(1e-9));
        for (double t : {0.13, 0.77, 1.5, 1.99}) CHECK(sol.at(t)[0] == doctest::Approx(std::exp(t)).epsilon(1e-8));
        CHECK_THROWS_AS(sol.at(2.5), std::out_of_range);
    }

    TEST_CASE("blow-up is reported as a pole") {
        OdeRhs<double> f = [](double, const std::vector<double>& y, std::vector<double>& dy) { dy = {y[0] * y[0]}; };
        try {
            dopri5(f, 0.0, std::vector<double>{1.0}, 2.0, IntegratorConfig{});
            FAIL("expected a pole");
        } catch (const FlowPoleError& e) {
            CHECK(e.last_good == doctest::Approx(1.0).epsilon(1e-3));
        }
    }

    TEST_CASE("singular segments") {
        auto fx = fixture(1);
        auto st = fx.st;
        st.s = 0.5;
        try {
            integrate(st, fx.prm, 1.5);
            FAIL("expected a singular segment");
        } catch (const SingularSegmentError& e) {
            CHECK(e.point == 1.0);
            CHECK(std::string(e.what()).find("s=1") != std::string::npos);
        }
        CHECK_THROWS_AS(check_segment(-0.5, -0.0005, 1e-3), SingularSegmentError);
        CHECK_NOTHROW(check_segment(-0.5, -0.01, 1e-3));
    }

    TEST_CASE("reversibility") {
        for (int n = 1; n <= 2; ++n) {
            auto fx = fixture(n);
            auto fwd = integrate(fx.st, fx.prm, 3.0);
            auto back = integrate(fwd.state_at(3.0), fx.prm, 2.0);
            CHECK(gap(back.state_at(2.0), fx.st) < 1e-8);
            for (size_t k = 1; k < fwd.size(); ++k) CHECK(fwd.sol.t[k] > fwd.sol.t[k - 1]);
        }
    }

    TEST_CASE("scalar P_VI oracle") {
        auto fx = fixture(1);
        CHECK(p6_oracle_compare(fx.st, fx.prm, 3.0).max_deviation < 1e-8);
        CHECK(p6_oracle_compare(fx.st, fx.prm, fx.st.s).max_deviation == 0);
        // the elimination of p is an identity in q, q', s
        for (int k = 0; k < 20; ++k) {
            auto rng = trial_rng(71, k);
            auto prm = random_params(1, rng);
            auto st = random_state(1, rng);
            auto [vq, vp] = vector_field(st, prm);
            CHECK(system_qdd(st, prm) == p6_rhs(st.q[0], vq[0], st.s, p6_constants(prm)));
        }
        SystemParams<double> p2{2, std::vector<double>(7, 0.1)};
        CHECK_THROWS(p6_constants(p2));
    }

    TEST_CASE("Backlund commutation") {
        auto f1 = fixture(1);
        CHECK(backlund_commutation({WeylToken::reflection, 2}, f1.st, f1.prm, 2.5) < 1e-7);
        auto f2 = fixture(2);
        CHECK(backlund_commutation({WeylToken::automorphism, 2}, f2.st, f2.prm, 2.5) < 1e-7);
        CHECK(backlund_commutation({WeylToken::reflection, 0}, f2.st, f2.prm, 2.5) < 1e-9);
    }

    TEST_CASE("Riccati locus drift") {
        auto fx = fixture(1);
        auto prm = fx.prm;
        prm.alpha[2] = 0;
        prm.alpha[0] = 1 - prm.alpha[1] - prm.alpha[3] - prm.alpha[4];
        auto st = fx.st;
        st.p = {0.0};
        auto tr = integrate(st, prm, 3.0);
        double worst = 0;
        for (size_t k = 0; k < tr.size(); ++k) worst = std::max(worst, std::abs(tr.sample(k).p[0]));
        CHECK(worst < 1e-10);
    }

    TEST_CASE("residual along a trajectory") {
        for (int n = 1; n <= 2; ++n) {
            auto fx = fixture(n);
            CHECK(trajectory_residual_max(integrate(fx.st, fx.prm, 3.0)) < 1e-9);
        }
    }

    TEST_CASE("complex polyline agrees with the real segment") {
        auto fx = fixture(1);
        auto real = integrate(fx.st, fx.prm, 3.0).state_at(3.0);
        PhaseState<cplx> c{fx.st.s, {fx.st.q[0]}, {fx.st.p[0]}};
        auto end = integrate_path(c, fx.prm, {2.0, cplx(2.5, 0.1), 3.0});
        CHECK(std::abs(end.q[0] - real.q[0]) < 1e-8);
        CHECK(std::abs(end.p[0] - real.p[0]) < 1e-8);
        CHECK_THROWS_AS(integrate_path(c, fx.prm, {2.0, cplx(1.0, 0.0)}), SingularSegmentError);
    }

    TEST_CASE("linear system") {
        auto fx = fixture(1);
        auto tr = integrate(fx.st, fx.prm, 2.5);
        const int N = 8;
        cplx z(0.7, 0.4);
        auto w = integrate_linear(std::vector<cplx>(N, 0.0), tr, z, 2.5);
        for (auto& v : w) CHECK(v == cplx(0, 0));
        std::vector<cplx> a(N), b(N), ab(N);
        for (int i = 0; i < N; ++i) {
            a[i] = cplx(1.0 + i, -0.5 * i);
            b[i] = cplx(0.25 * i, 2.0 - i);
            ab[i] = a[i] + b[i];
        }
        auto wa = integrate_linear(a, tr, z, 2.5), wb = integrate_linear(b, tr, z, 2.5), wab = integrate_linear(ab, tr, z, 2.5);
        for (int i = 0; i < N; ++i) CHECK(std::abs(wab[i] - wa[i] - wb[i]) < 1e-9 * std::max(1.0, std::abs(wab[i])));
        CHECK_THROWS_AS(integrate_linear(a, tr, z, 2.7), std::out_of_range);
        CHECK(mixed_derivative_gap(tr, 2.3, z, a) < 1e-6);
    }

    TEST_CASE("monodromy") {
        auto fx = fixture(1);
        auto tr = integrate(fx.st, fx.prm, 3.0);
        auto [m1, m2] = monodromy_probe(tr, 2.2, 2.9, 0.25, 0.0, monodromy_config());
        CHECK(multiset_distance(m1.eigenvalues, m2.eigenvalues) < 1e-6);
        CHECK(std::abs(m1.matrix.trace() - m2.matrix.trace()) < 1e-6);
        cplx prod = 1;
        for (auto& e : m1.eigenvalues) prod *= e;
        CHECK(std::abs(prod - m1.determinant) < 1e-6 * std::max(1.0, std::abs(prod)));
        auto twice = monodromy_at(tr.state_at(2.2), fx.prm, 0.25, 2, 0.0, monodromy_config());
        auto loose = monodromy_probe(tr, 2.2, 2.9, 1.0);
        CHECK(std::abs(loose.first.matrix.trace() - loose.second.matrix.trace()) < 1e-6);
        CHECK((twice.matrix - m1.matrix * m1.matrix).cwiseAbs().maxCoeff() < 1e-6);
        CHECK(multiset_distance({1.0, 2.0}, {2.0, 1.0}) == 0);
        CHECK(std::isinf(multiset_distance({1.0}, {})));
    }

    TEST_CASE("trial runners agree") {
        TrialFn f = [](int k) {
            auto rng = trial_rng(99, k);
            return TrialResult{k % 3 != 0, static_cast<double>(rng() % 1000), std::to_string(k)};
        };
        auto a = run_trials_serial(40, f), b = run_trials_parallel(40, f, 4);
        for (int k = 0; k < 40; ++k) {
            CHECK(a[k].pass == b[k].pass);
            CHECK(a[k].value == b[k].value);
        }
        TrialFn thrower = [](int) -> TrialResult { throw std::runtime_error("boom"); };
        auto c = run_trials_parallel(3, thrower);
        CHECK_FALSE(c[0].pass);
        CHECK(c[0].detail == "boom");
        setenv("PAINLEVE_D_THREADS", "3", 1);
        CHECK(configured_threads() == 3);
        unsetenv("PAINLEVE_D_THREADS");
    }

    TEST_CASE("flow suite") {
        for (int n = 1; n <= 2; ++n) {
            SuiteOptions opt;
            opt.n = n;
            check_report(run_suite("flow", opt));
        }
    }
}
