#include "painleve_d/io.hpp"
#include "painleve_d/suites.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace pd;

namespace {

enum Exit { ok = 0, failed = 1, usage = 2 };

struct Common {
    std::string params_path, state_path, output, format = "json", convention = "as-printed", gauge = "0";
    double rtol = 1e-10, atol = 1e-12;
};

void emit(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw SchemaError("cannot write " + path);
    out << text;
}

IntegratorConfig integrator(const Common& c) {
    if (!(c.rtol > 0) || !(c.atol > 0)) throw SchemaError("tolerances must be positive");
    IntegratorConfig cfg;
    cfg.rtol = c.rtol;
    cfg.atol = c.atol;
    return cfg;
}

Rational gauge_of(const Common& c) {
    try {
        return Rational::parse(c.gauge);
    } catch (const std::exception&) {
        throw SchemaError("--gauge-eps0 must be a rational \"num/den\"");
    }
}

json manifest(const std::string& command, const Common& c, json extra) {
    extra["command"] = command;
    extra["convention"] = c.convention;
    extra["rtol"] = c.rtol;
    extra["atol"] = c.atol;
    extra["gauge_eps0"] = c.gauge;
    return extra;
}

int cmd_verify(const Common& c, const std::string& suite, int n, int trials, std::uint64_t seed) {
    SuiteOptions opt;
    opt.n = n;
    opt.trials = trials;
    opt.seed = seed;
    opt.convention = NodeConvention::parse(c.convention);
    opt.gauge = gauge_of(c);
    opt.integrator = integrator(c);
    auto rep = run_suite(suite, opt);
    if (c.format == "csv") {
        std::string out = "property,status,trials,measured,counterexample\n";
        for (auto& p : rep.properties) {
            std::string ce = p.counterexample;
            for (auto& ch : ce)
                if (ch == ',' || ch == '\n') ch = ';';
            out += p.name + "," + (p.pass ? "pass" : "fail") + "," + std::to_string(p.trials) + "," +
                   json(p.measured).dump() + "," + ce + "\n";
        }
        emit(out, c.output);
    } else {
        json j = rep.to_json();
        j["manifest"] = manifest("verify", c, {{"suite", suite}, {"n", n}, {"trials", trials}, {"seed", seed}});
        emit(j.dump(2) + "\n", c.output);
    }
    return rep.pass() ? ok : failed;
}

int cmd_integrate(const Common& c, double s_end) {
    auto cfg = integrator(c);
    auto prm = params_from_json_float(read_json_file(c.params_path));
    auto st = state_from_json_float(read_json_file(c.state_path), prm.n);
    auto tr = integrate(st, prm, s_end, cfg);
    tr.convention = c.convention;
    if (c.format == "csv") emit(trajectory_csv(tr), c.output);
    else emit(trajectory_json(tr).dump(2) + "\n", c.output);
    if (!c.output.empty() && c.output != "-") {
        json m = manifest("integrate", c,
                          {{"params", c.params_path}, {"state", c.state_path}, {"s_end", s_end}, {"format", c.format},
                           {"steps", tr.size() - 1}});
        emit(m.dump(2) + "\n", c.output + ".manifest.json");
    }
    return ok;
}

int cmd_weyl(const Common& c, const std::string& word_text) {
    auto prm = params_from_json(read_json_file(c.params_path));
    auto st = state_from_json(read_json_file(c.state_path), prm.n);
    WeylWord word;
    try {
        word = parse_word(word_text, prm.n);
    } catch (const std::invalid_argument& e) {
        throw SchemaError(e.what());
    }
    auto conv = NodeConvention::parse(c.convention);
    auto [np, ns] = apply_word(word, prm, st, conv);
    json j = {{"schema", kWeylSchema},
              {"word", word_to_string(word)},
              {"convention", conv.name()},
              {"params", params_to_json(np)},
              {"state", state_to_json(ns)}};
    emit(j.dump(2) + "\n", c.output);
    return ok;
}

int cmd_lax(const Common& c) {
    auto prm = params_from_json(read_json_file(c.params_path));
    auto st = state_from_json(read_json_file(c.state_path), prm.n);
    auto ev = solve_epsilon(prm, gauge_of(c));
    auto M = build_M(st, prm, ev);
    auto B = build_B(st, prm);
    auto R = compatibility_residual(st, prm, ev);
    Rational worst(0);
    for (auto& [d, m] : R.terms())
        for (auto& [k, v] : m.entries()) worst = std::max(worst, v.sign() < 0 ? -v : v);
    json eps = json::array();
    for (auto& e : ev.eps) eps.push_back(e.str());
    json j = {{"schema", kLaxSchema},  {"n", prm.n},
              {"epsilon", eps},        {"M", loop_matrix_json(M)},
              {"B", loop_matrix_json(B)}, {"residual_max_abs", worst.str()}};
    emit(j.dump(2) + "\n", c.output);
    return R.is_zero_matrix() ? ok : failed;
}

int cmd_monodromy(const Common& c, double radius, int turns) {
    auto cfg = integrator(c);
    auto prm = params_from_json_float(read_json_file(c.params_path));
    auto st = state_from_json_float(read_json_file(c.state_path), prm.n);
    auto m = monodromy_at(st, prm, radius, turns, gauge_of(c).to_double(), cfg);
    emit(monodromy_json(m).dump(2) + "\n", c.output);
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"coupled Painleve VI system of type D(1)_{2n+2}: verification, integration, symmetries"};
    app.require_subcommand(1);
    Common c;
    const std::vector<std::string> conventions{"as-printed", "swap01", "swapTail", "swapBoth"};

    auto add_io = [&](CLI::App* sub, bool files) {
        if (files) {
            sub->add_option("--params", c.params_path, "parameters JSON")->required();
            sub->add_option("--state", c.state_path, "phase state JSON")->required();
        }
        sub->add_option("--output", c.output, "output file (default stdout)");
        sub->add_option("--convention", c.convention, "phi-dictionary node convention")
            ->check(CLI::IsMember(conventions));
        sub->add_option("--gauge-eps0", c.gauge, "gauge value for eps_0 (rational)");
        sub->add_option("--rtol", c.rtol, "relative tolerance");
        sub->add_option("--atol", c.atol, "absolute tolerance");
    };

    std::string suite = "all";
    int n = 1, trials = 25;
    std::uint64_t seed = 1;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite)->check(CLI::IsMember(suite_names()));
    verify->add_option("--n", n)->check(CLI::PositiveNumber);
    verify->add_option("--trials", trials)->check(CLI::PositiveNumber);
    verify->add_option("--seed", seed);
    verify->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}));
    add_io(verify, false);

    double s_end = 0;
    auto* integ = app.add_subcommand("integrate", "integrate the Hamiltonian system along real s");
    integ->add_option("--s-end", s_end, "final value of s")->required();
    integ->add_option("--format", c.format)->check(CLI::IsMember({"json", "csv"}))->default_str("csv");
    add_io(integ, true);

    std::string word;
    auto* weyl = app.add_subcommand("weyl", "apply a word in r0..r{2n+2}, p1, p2 (left to right)");
    weyl->add_option("--word", word, "comma-separated tokens, e.g. r0,r3,p1")->required();
    add_io(weyl, true);

    auto* lax = app.add_subcommand("lax", "emit M, B and the exact compatibility residual");
    add_io(lax, true);

    double radius = 1;
    int turns = 1;
    auto* mono = app.add_subcommand("monodromy", "monodromy of z dw/dz = -M(z) w around |z| = radius");
    mono->add_option("--radius", radius)->check(CLI::PositiveNumber);
    mono->add_option("--turns", turns)->check(CLI::PositiveNumber);
    add_io(mono, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }
    if (integ->parsed() && integ->count("--format") == 0) c.format = "csv";

    try {
        if (verify->parsed()) return cmd_verify(c, suite, n, trials, seed);
        if (integ->parsed()) return cmd_integrate(c, s_end);
        if (weyl->parsed()) return cmd_weyl(c, word);
        if (lax->parsed()) return cmd_lax(c);
        if (mono->parsed()) return cmd_monodromy(c, radius, turns);
    } catch (const SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const SingularSegmentError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failed;
    } catch (const FlowPoleError& e) {
        std::cerr << "error: " << e.what() << " (last good s = " << e.last_good << ")\n";
        return failed;
    } catch (const PoleError& e) {
        std::cerr << "error: pole at node " << e.node << ", step " << e.step << ": " << e.what() << "\n";
        return failed;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return failed;
    }
    return usage;
}
