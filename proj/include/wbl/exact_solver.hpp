#pragma once

#include <optional>

#include "wbl/board.hpp"
#include "wbl/transcript.hpp"

namespace wbl {

struct BudgetExceeded : GameError { using GameError::GameError; };

// Exhaustive game values for tiny boards. State = edge ownership vector
// (base 3) x walker position x side to move; Walker wins iff the start
// state lies in her attractor of the target set, infinite play is a
// Breaker win.
struct SolveQuery {
    int n = 3;
    int b = 1;
    Player first_mover = Player::Walker;
    Vertex start_vertex = 0;

    enum class Target : uint8_t { CycleAtLeast, ContainsCk };
    Target target = Target::CycleAtLeast;
    int target_param = 3; // L for CycleAtLeast, k for ContainsCk
};

struct SolveResult {
    Player winner = Player::Breaker;
    // Line of optimal play (Walker fastest win vs maximal resistance);
    // empty move list when Breaker wins.
    Transcript principal_variation;
};

SolveResult solve(const SolveQuery& q);

// Largest L such that Walker can force a cycle of length >= L; 0 if none.
int value_longest_cycle(int n, int b, Player first_mover, Vertex start = 0);

// Best cycle length Walker can reach when Breaker is pinned to the
// long-cycle prevention strategy (reachability, not adversarial search).
int max_cycle_vs_prevent(int n, int b, Player first_mover, Vertex start = 0);

} // namespace wbl
