#pragma once

#include <optional>
#include <vector>

#include "wbl/profile.hpp"
#include "wbl/strategy.hpp"

namespace wbl {

struct ExtensionFailed : GameError { using GameError::GameError; };

// Ledger of the three quantities bounded by Property P[t+1,x,i] during
// Stage II of the unbiased cycle strategy.
struct PLedger {
    int eB_U = 0;              // Breaker edges inside the untouched set
    int dB_next_plus_eB_U = 0; // d_B(v_{t+1}, U_{t+1}) + e_B(U_{t+1})
    int eB_ends_U = 0;         // e_B({v_1, v_ell}, U_{t+1})
};

// P[t+1,x,i]: the three inequalities as a conjunction.
bool check_property_P(const PLedger& led, int x, int i);

// Untouched vertices whose Breaker degree toward touched vertices has
// reached the threshold (n/11 under the paper profile).
std::vector<Vertex> compute_Vt(const Board& bd, const VertexSet& untouched,
                               int threshold);

// One cycle-extension: from a cycle C with the Walker positioned on it,
// splice one outside vertex into C in < 25 rounds. Drives both sides of
// the game; the strategy class uses the same machinery move by move.
// Throws PreconditionFailed if the entry conditions are violated and
// ExtensionFailed if no pigeonhole triple exists or the budget runs out.
Certificate extend_cycle(Game& g, BreakerStrategy& breaker,
                         const Certificate& cycle, const ConstantsProfile& prof);

// The five-stage unbiased strategy: path building, cycle + tail growth
// under the P-ledger, a close through the path head or a fresh vertex,
// then iterated extensions until the cycle has length n-2.
class Thm1CycleWalker : public WalkerStrategy {
public:
    explicit Thm1CycleWalker(const ConstantsProfile& prof) : prof_(prof) {}

    enum class Stage : uint8_t { I, II, III, IV, V, Done };
    struct Extend; // per-extension sub-machine, shared with extend_cycle()

    void begin(const Game& g) override;
    std::optional<Vertex> next_step(const Game& g) override;
    std::optional<Certificate> certificate() const override;

    Stage stage() const { return stage_; }
    int x() const { return x_; }
    const std::vector<Vertex>& cycle() const { return cycle_; }
    PLedger ledger(const Game& g) const;

private:
    Vertex stage1(const Game& g);
    Vertex stage2(const Game& g);
    Vertex stage3(const Game& g);
    Vertex stage4(const Game& g);
    std::optional<Vertex> stage5(const Game& g);
    void step_to(const Game& g, Vertex w); // bookkeeping for a chosen move
    void process_breaker_log(const Game& g);

    ConstantsProfile prof_;
    Stage stage_ = Stage::I;
    std::vector<Vertex> path_;  // distinct vertices in visit order
    VertexSet U_{1};            // untouched set
    int u_count_ = 0;
    int eB_U_ = 0;
    size_t log_seen_ = 0;
    int ell_ = -1;              // cycle C = path_[0..ell_] once in Stage II
    int x_ = 0;
    int i_flag_ = 0;
    enum class Last : uint8_t { None, IIb, IIc1, IIc2 };
    Last last_case_ = Last::None;
    int iv_step_ = 0;
    Vertex iv_w_ = -1;
    std::vector<Vertex> cycle_; // Stage V working cycle
    int stage5_rounds_ = 0;
    std::shared_ptr<Extend> ext_;
};

// Convenience driver: full game of thm1-cycle vs the given Breaker.
MatchResult play_unbiased_cycle_game(const GameConfig& cfg,
                                     BreakerStrategy& breaker);

} // namespace wbl
