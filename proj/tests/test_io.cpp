#include "helpers.hpp"

using namespace pdtest;

TEST_SUITE("io") {
    TEST_CASE("fixtures round-trip") {
        for (auto [pf, sf] : {std::pair{"params_n1.json", "state_n1.json"}, {"params_n1.json", "state_n1_below.json"},
                              {"params_n1.json", "state_n1_p0.json"}, {"params_n2.json", "state_n2.json"}}) {
            auto pj = read_json_file(data_path(pf));
            auto sj = read_json_file(data_path(sf));
            auto prm = params_from_json(pj);
            auto st = state_from_json(sj, prm.n);
            CHECK(params_to_json(prm) == pj);
            CHECK(state_to_json(st) == sj);
            CHECK(params_from_json(params_to_json(prm)) == prm);
            CHECK(prm.normalized());
        }
    }

    TEST_CASE("schema violations") {
        CHECK_THROWS_AS(params_from_json(read_json_file(data_path("bad_params.json"))), SchemaError);
        CHECK_THROWS_AS(read_json_file(data_path("missing.json")), SchemaError);
        json p = {{"schema", kParamsSchema}, {"n", 1}, {"alpha", {"1/6", "1/6", "1/6", "1/6", 0.5}}};
        CHECK_THROWS_AS(params_from_json(p), SchemaError);
        CHECK(params_from_json_float(p).alpha[4] == 0.5);
        p["alpha"][4] = "1/x";
        CHECK_THROWS_AS(params_from_json(p), SchemaError);
        p["alpha"][4] = 1;
        CHECK(params_from_json(p).alpha[4] == R(1));
        p["schema"] = "other";
        CHECK_THROWS_AS(params_from_json(p), SchemaError);
        json s = {{"schema", kStateSchema}, {"s", "2"}, {"q", {"1"}}, {"p", {"1", "2"}}};
        CHECK_THROWS_AS(state_from_json(s, 1), SchemaError);
    }

    TEST_CASE("trajectory output") {
        for (int n = 1; n <= 2; ++n) {
            auto prm = params_from_json_float(read_json_file(data_path(n == 1 ? "params_n1.json" : "params_n2.json")));
            auto st = state_from_json_float(read_json_file(data_path(n == 1 ? "state_n1.json" : "state_n2.json")), n);
            auto tr = integrate(st, prm, 2.5);
            auto csv = trajectory_csv(tr);
            std::string header = csv.substr(0, csv.find('\n'));
            CHECK(header == (n == 1 ? "s,q1,p1" : "s,q1,q2,p1,p2"));
            auto js = trajectory_json(tr);
            CHECK(js.is_array());
            CHECK(js.size() == tr.size());
            CHECK(js.back()["s"].get<double>() == 2.5);
        }
    }

    TEST_CASE("matrix and monodromy encodings") {
        const auto& b = chevalley(1);
        auto j = loop_matrix_json(b.E[0]);
        REQUIRE(j.size() == 2);
        CHECK(j[0]["z_degree"] == 1);
        CHECK(j[0]["row"].get<int>() >= 1);
        CHECK(j[0]["value"].is_string());

        auto prm = params_from_json_float(read_json_file(data_path("params_n1.json")));
        auto st = state_from_json_float(read_json_file(data_path("state_n1.json")), 1);
        auto m = monodromy_json(monodromy_at(st, prm, 1.0));
        CHECK(m["schema"] == kMonodromySchema);
        CHECK(m["matrix"].size() == 8);
        CHECK(m["eigenvalues"].size() == 8);
    }

    TEST_CASE("reports are deterministic") {
        SuiteOptions opt;
        opt.n = 1;
        opt.trials = 8;
        opt.seed = 42;
        auto a = run_suite("weyl", opt).to_json().dump();
        auto b = run_suite("weyl", opt).to_json().dump();
        opt.parallel = false;
        auto c = run_suite("weyl", opt).to_json().dump();
        CHECK(a == b);
        CHECK(a == c);
        CHECK_THROWS(run_suite("nope", opt));
        opt.n = 0;
        CHECK_THROWS(run_suite("weyl", opt));
    }
}
