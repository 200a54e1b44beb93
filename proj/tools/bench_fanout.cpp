// Wall-clock comparison of the serial trial loop against the OpenMP
// fan-out, on the same campaign. The two must produce identical CSV.
#include <chrono>
#include <cstdio>

#include "wbl/experiment.hpp"

using namespace wbl;

int main(int argc, char** argv) {
    int n = argc > 1 ? std::atoi(argv[1]) : 2000;
    int trials = argc > 2 ? std::atoi(argv[2]) : 4;

    ExperimentSpec spec;
    spec.kind = "match";
    spec.game.n = n;
    spec.game.b = 1;
    spec.game.first_mover = Player::Breaker;
    spec.game.profile = "paper";
    spec.walker = "thm1-cycle";
    spec.breaker = "random";
    spec.trials = trials;
    spec.seed_base = 1;

    auto time_run = [&](bool parallel) {
        spec.parallel = parallel;
        auto t0 = std::chrono::steady_clock::now();
        auto sum = run_experiment(spec);
        auto t1 = std::chrono::steady_clock::now();
        double s = std::chrono::duration<double>(t1 - t0).count();
        std::printf("%-8s trials=%d failures=%d wall=%.3fs\n",
                    parallel ? "openmp" : "serial", sum.trials, sum.failures,
                    s);
        return sum.csv_text;
    };

    auto serial_csv = time_run(false);
    auto parallel_csv = time_run(true);
    if (serial_csv != parallel_csv) {
        std::printf("MISMATCH: serial and parallel CSV differ\n");
        return 1;
    }
    std::printf("outputs identical\n");
    return 0;
}
