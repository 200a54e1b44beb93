#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wbl/board.hpp"
#include "wbl/profile.hpp"
#include "wbl/transcript.hpp"

namespace wbl {

// A strategy is a (possibly seeded-random) function from the observable
// game state plus its private memory to the next move. The match runner
// owns the alternation loop.
class WalkerStrategy {
public:
    virtual ~WalkerStrategy() = default;
    virtual void begin(const Game&) {}
    virtual Vertex choose_start(const Game& g) { return g.config().start_vertex; }
    // nullopt = stop playing (goal reached or resign).
    virtual std::optional<Vertex> next_step(const Game& g) = 0;
    virtual std::optional<Certificate> certificate() const { return std::nullopt; }
    // Stage-transition events etc., drained into the transcript as comments.
    std::vector<std::string> drain_events() { return std::exchange(events_, {}); }

protected:
    void emit(std::string e) { events_.push_back(std::move(e)); }

private:
    std::vector<std::string> events_;
};

class BreakerStrategy {
public:
    virtual ~BreakerStrategy() = default;
    virtual void begin(const Game&) {}
    virtual std::vector<EdgeId> claim(const Game& g) = 0;
};

enum class MatchOutcome : uint8_t {
    WalkerFinished, // walker strategy stopped on its own
    WalkerStuck,    // no legal walker move
    Stopped,        // external stop predicate fired
    BoardExhausted, // no free edges and walker strategy stopped
};

struct MatchResult {
    Transcript transcript;
    MatchOutcome outcome = MatchOutcome::Stopped;
    std::optional<Certificate> certificate;
    bool certificate_valid = false;
    int rounds = 0;
    std::shared_ptr<Game> final_state;
};

using StopPredicate = std::function<bool(const Game&)>;

inline StopPredicate stop_after_rounds(int r) {
    return [r](const Game& g) { return g.round() >= r; };
}

// Alternates moves per first_mover until the walker stops, gets stuck, or
// the stop predicate fires. Certificates are validated independently.
// Throws StrategyFault when a strategy returns an illegal move.
MatchResult run_match(const GameConfig& cfg, WalkerStrategy& walker,
                      BreakerStrategy& breaker, const StopPredicate& stop = {});

// As above, but continues from a pre-seeded game (e.g. a W_0 in place).
MatchResult run_match_from(Game game, WalkerStrategy& walker,
                           BreakerStrategy& breaker, const StopPredicate& stop = {});

// ---- registry ------------------------------------------------------------

struct StrategyContext {
    GameConfig config;
    ConstantsProfile profile;
};

std::unique_ptr<WalkerStrategy> make_walker(const std::string& name,
                                            const StrategyContext& ctx);
std::unique_ptr<BreakerStrategy> make_breaker(const std::string& name,
                                              const StrategyContext& ctx);
std::vector<std::string> walker_strategy_names();
std::vector<std::string> breaker_strategy_names();

} // namespace wbl
