#include "painleve_d/suites.hpp"

#include <cstdio>
#include <cstdlib>

// one line per criterion; exit status 1 if any fails
int main(int argc, char** argv) {
    std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20240611;
    const double budget[12] = {0, 60, 0, 30, 0, 0, 0, 0, 0, 30, 60, 0};
    bool all = true;
    for (int id = 1; id <= 11; ++id) {
        pd::CriterionResult cr;
        try {
            cr = pd::run_criterion(id, seed);
        } catch (const std::exception& e) {
            cr.id = id;
            cr.detail = e.what();
        }
        bool in_time = budget[id] == 0 || cr.seconds <= budget[id];
        bool ok = cr.pass && in_time;
        all = all && ok;
        std::printf("criterion %2d: %s (%.2fs%s)%s\n", id, ok ? "PASS" : "FAIL", cr.seconds,
                    in_time ? "" : ", over time budget", cr.detail.c_str());
        std::fflush(stdout);
    }
    return all ? 0 : 1;
}
