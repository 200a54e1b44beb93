#include "wbl/strategy.hpp"

#include <utility>

namespace wbl {

namespace {

void drain_into(Transcript& t, WalkerStrategy& walker) {
    for (auto& e : walker.drain_events()) t.add_comment(e);
}

} // namespace

MatchResult run_match_from(Game game, WalkerStrategy& walker,
                           BreakerStrategy& breaker, const StopPredicate& stop) {
    const GameConfig& cfg = game.config();
    MatchResult res;
    res.transcript.config = cfg;

    walker.begin(game);
    breaker.begin(game);
    if (!game.started()) game.set_start(walker.choose_start(game));

    auto breaker_move = [&]() {
        if (game.board().free_edges() == 0) {
            // nothing to claim; an empty claim is legal in exhaustion
            std::vector<EdgeId> none;
            game.breaker_claim(none);
            if (cfg.record_moves) res.transcript.add_move(game.move_log().back());
            return;
        }
        std::vector<EdgeId> edges;
        try {
            edges = breaker.claim(game);
            game.breaker_claim(edges);
        } catch (const StrategyFault&) {
            throw;
        } catch (const GameError& e) {
            std::string detail = "breaker strategy fault: ";
            detail += e.what();
            throw StrategyFault(detail);
        }
        if (cfg.record_moves) res.transcript.add_move(game.move_log().back());
    };

    auto walker_move = [&]() -> bool { // false = walker stopped
        if (!game.has_legal_walker_target()) {
            res.outcome = MatchOutcome::WalkerStuck;
            return false;
        }
        std::optional<Vertex> t;
        try {
            t = walker.next_step(game);
            drain_into(res.transcript, walker);
            if (t) game.walker_step(*t);
        } catch (const StrategyFault&) {
            throw;
        } catch (const GameError& e) {
            std::string detail = "walker strategy fault: ";
            detail += e.what();
            throw StrategyFault(detail);
        }
        if (!t) {
            res.outcome = MatchOutcome::WalkerFinished;
            return false;
        }
        if (cfg.record_moves) res.transcript.add_move(game.move_log().back());
        return true;
    };

    while (true) {
        if (stop && stop(game)) {
            res.outcome = MatchOutcome::Stopped;
            break;
        }
        if (game.board().free_edges() == 0) {
            res.outcome = MatchOutcome::BoardExhausted;
            break;
        }
        bool cont;
        if (cfg.first_mover == Player::Breaker) {
            breaker_move();
            cont = walker_move();
        } else {
            cont = walker_move();
            if (cont) breaker_move();
        }
        if (!cont) break;
    }

    res.certificate = walker.certificate();
    if (res.certificate) {
        res.certificate_valid = validate_certificate(game, *res.certificate);
        res.transcript.certificate = res.certificate;
    }
    res.rounds = game.round();
    res.final_state = std::make_shared<Game>(std::move(game));
    return res;
}

MatchResult run_match(const GameConfig& cfg, WalkerStrategy& walker,
                      BreakerStrategy& breaker, const StopPredicate& stop) {
    cfg.validate();
    return run_match_from(Game(cfg), walker, breaker, stop);
}

} // namespace wbl
