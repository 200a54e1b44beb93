#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wbl/board.hpp"

namespace wbl {

struct ConfigError : GameError { using GameError::GameError; };

// Declarative Monte Carlo campaign. Trial i always runs with seed
// seed_base + i, so any row can be reproduced in isolation.
struct ExperimentSpec {
    std::string kind;    // "match" | "tree" | "randomized"
    GameConfig game;
    std::string walker;  // match kind only
    std::string breaker;
    int trials = 1;
    uint64_t seed_base = 1;
    bool parallel = true;
    std::vector<std::string> assertions;
    std::string output_csv;
    std::string output_json;
    std::string transcript_dir;

    // randomized kind parameters; p == 0 selects ln n * lnlnln n / n
    double epsilon = 0.25;
    double p = 0.0;
    int d = 0;

    static ExperimentSpec parse_json(const std::string& text);
    static ExperimentSpec load(const std::string& path);
    std::string canonical_json() const;
};

struct TrialResult {
    uint64_t seed = 0;
    bool failed = false;
    std::string error;                    // failure reason, with the seed
    std::string csv_row;
    std::map<std::string, double> stats;  // aggregated into the summary
};

struct ExperimentSummary {
    std::string spec_hash;
    int trials = 0;
    int failures = 0;
    // per-column {min, max, mean} over non-failed trials
    std::map<std::string, std::array<double, 3>> aggregates;
    std::vector<TrialResult> rows;
    std::string csv_text;

    std::string to_json() const;
};

// Runs the campaign (OpenMP fan-out unless spec.parallel is false), writes
// the CSV/JSON outputs if paths are set, and returns the summary. Output
// paths are taken relative to $WBL_OUT when that variable is set.
ExperimentSummary run_experiment(const ExperimentSpec& spec);

} // namespace wbl
