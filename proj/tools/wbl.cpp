#include <cstdio>
#include <iostream>

#include "CLI11.hpp"

#include "wbl/exact_solver.hpp"
#include "wbl/experiment.hpp"
#include "wbl/minbox.hpp"
#include "wbl/transcript.hpp"

using namespace wbl;

namespace {

int cmd_run(const std::string& path, int trials_override,
            int64_t seed_override, bool serial, const std::string& csv,
            const std::string& json_out) {
    ExperimentSpec spec = ExperimentSpec::load(path);
    if (trials_override > 0) spec.trials = trials_override;
    if (seed_override >= 0) spec.seed_base = (uint64_t)seed_override;
    if (serial) spec.parallel = false;
    if (!csv.empty()) spec.output_csv = csv;
    if (!json_out.empty()) spec.output_json = json_out;

    auto sum = run_experiment(spec);
    std::cout << sum.to_json() << "\n";
    for (const auto& tr : sum.rows)
        if (tr.failed) std::cerr << tr.error << "\n";
    return sum.failures == 0 ? 0 : 1;
}

int cmd_replay(const std::string& path) {
    Transcript t = Transcript::load(path);
    auto rep = replay(t);
    std::cout << "moves=" << rep.moves_replayed
              << " certificate=" << (rep.certificate_present ? "yes" : "no");
    if (rep.certificate_present)
        std::cout << " valid=" << (rep.certificate_valid ? "yes" : "no")
                  << " length=" << rep.certificate_length;
    std::cout << "\n";
    return rep.certificate_present && !rep.certificate_valid ? 1 : 0;
}

int cmd_solve(int n, int b, const std::string& first,
              const std::string& target, int start) {
    Player fm = first == "B" ? Player::Breaker : Player::Walker;
    if (target == "longest") {
        int v = value_longest_cycle(n, b, fm, start);
        std::cout << "value_longest_cycle=" << v << "\n";
        return 0;
    }
    SolveQuery q;
    q.n = n;
    q.b = b;
    q.first_mover = fm;
    q.start_vertex = start;
    if (target.rfind("cycle>=", 0) == 0) {
        q.target = SolveQuery::Target::CycleAtLeast;
        q.target_param = std::stoi(target.substr(7));
    } else if (target.rfind("ck=", 0) == 0) {
        q.target = SolveQuery::Target::ContainsCk;
        q.target_param = std::stoi(target.substr(3));
    } else {
        std::cerr << "target must be 'longest', 'cycle>=L' or 'ck=K'\n";
        return 2;
    }
    auto res = solve(q);
    std::cout << "winner="
              << (res.winner == Player::Walker ? "Walker" : "Breaker") << "\n";
    if (res.winner == Player::Walker)
        std::cout << res.principal_variation.serialize();
    return 0;
}

int cmd_fuzz(int n, int64_t D, double alpha, int bias, int rounds,
             int schedules, uint64_t seed) {
    auto rep = minbox_fuzz(n, D, alpha, bias, rounds, schedules, seed);
    std::cout << rep.to_json() << "\n";
    return rep.violations == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Walker-Breaker game laboratory"};
    app.require_subcommand(1);

    std::string spec_path, csv, json_out;
    int trials = 0;
    int64_t seed_base = -1;
    bool serial = false;
    auto* run = app.add_subcommand("run", "run an experiment spec");
    run->add_option("spec", spec_path, "JSON experiment spec")->required();
    run->add_option("--trials", trials, "override trial count");
    run->add_option("--seed-base", seed_base, "override seed base");
    run->add_flag("--serial", serial, "disable the parallel fan-out");
    run->add_option("--csv", csv, "override CSV output path");
    run->add_option("--json", json_out, "override JSON summary path");

    std::string replay_path;
    auto* rp = app.add_subcommand("replay", "verify a transcript");
    rp->add_option("file", replay_path, "transcript file")->required();

    int sn = 4, sb = 1, sstart = 0;
    std::string sfirst = "W", starget = "longest";
    auto* sv = app.add_subcommand("solve", "exact small-board values");
    sv->add_option("--n", sn, "vertices (<= 6)")->required();
    sv->add_option("--b", sb, "Breaker bias");
    sv->add_option("--first", sfirst, "first mover: W or B");
    sv->add_option("--target", starget, "'longest', 'cycle>=L' or 'ck=K'");
    sv->add_option("--start", sstart, "Walker start vertex");

    int fn = 100, fbias = 1, frounds = 64, fsched = 100;
    int64_t fD = 0;
    double falpha = 0.01;
    uint64_t fseed = 1;
    auto* fz = app.add_subcommand("minbox-fuzz", "box-game invariant drill");
    fz->add_option("--n", fn, "number of boxes")->required();
    fz->add_option("--box-size", fD, "box size D (default 4n)");
    fz->add_option("--alpha", falpha, "active threshold fraction");
    fz->add_option("--bias", fbias, "adversary budget b'");
    fz->add_option("--rounds", frounds, "rounds per schedule");
    fz->add_option("--schedules", fsched, "number of schedules");
    fz->add_option("--seed", fseed, "base seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(spec_path, trials, seed_base, serial, csv, json_out);
        if (rp->parsed()) return cmd_replay(replay_path);
        if (sv->parsed()) return cmd_solve(sn, sb, sfirst, starget, sstart);
        if (fz->parsed())
            return cmd_fuzz(fn, fD > 0 ? fD : 4LL * fn, falpha, fbias, frounds,
                            fsched, fseed);
    } catch (const GameError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
