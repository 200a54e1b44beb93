#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wbl/breaker_strategies.hpp"
#include "wbl/rng.hpp"
#include "wbl/strategy.hpp"
#include "wbl/transcript.hpp"

using namespace wbl;

TEST_CASE("edge id canonical form") {
    CHECK(EdgeId::make(5, 2) == EdgeId::make(2, 5));
    CHECK(EdgeId::make(2, 5).u == 2);
    CHECK_THROWS_AS(EdgeId::make(3, 3), InvalidConfig);
}

TEST_CASE("rng determinism") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng c(42);
    for (int i = 0; i < 1000; ++i) {
        uint64_t x = c.below(7);
        CHECK(x < 7);
    }
    Rng d(1);
    for (int i = 0; i < 50; ++i) CHECK_FALSE(d.coin(0.0));
    for (int i = 0; i < 50; ++i) CHECK(d.coin(1.0));
}

TEST_CASE("vertex set basics") {
    VertexSet s(130);
    CHECK(s.count() == 0);
    s.set(0); s.set(64); s.set(129);
    CHECK(s.count() == 3);
    CHECK(s.test(64));
    CHECK_FALSE(s.test(63));
    CHECK(s.next(0) == 0);
    CHECK(s.next(1) == 64);
    CHECK(s.next(65) == 129);
    CHECK(s.next(130) == -1);
    s.reset(64);
    CHECK(s.count() == 2);
    VertexSet t(130);
    t.fill();
    CHECK(t.count() == 130);
    CHECK(t.count_and(s) == 2);
}

TEST_CASE("board ownership and degrees") {
    Board bd(6);
    CHECK(bd.total_edges() == 15);
    CHECK(bd.free_edges() == 15);
    bd.claim_walker(0, 1);
    bd.claim_breaker(2, 3);
    CHECK(bd.owner(1, 0) == Owner::Walker);
    CHECK(bd.owner(3, 2) == Owner::Breaker);
    CHECK(bd.is_free(0, 2));
    CHECK(bd.dW(0) == 1);
    CHECK(bd.dB(2) == 1);
    CHECK(bd.dF(0) == 4);
    CHECK(bd.free_edges() == 13);
    CHECK_THROWS_AS(bd.claim_breaker(0, 1), IllegalClaim);
    CHECK_THROWS_AS(bd.claim_walker(2, 3), IllegalMove);

    VertexSet mask(6);
    mask.set(1); mask.set(3);
    CHECK(bd.dW_in(0, mask) == 1);
    CHECK(bd.dB_in(2, mask) == 1);
    CHECK(bd.dB_in(0, mask) == 0);
}

TEST_CASE("adjacency set survives promotion to bit rows") {
    const int n = 40000; // threshold is n/512 = 78
    Board bd(n);
    for (Vertex v = 1; v <= 200; ++v) bd.claim_breaker(0, v);
    CHECK(bd.dB(0) == 200);
    CHECK(bd.is_breaker(0, 200));
    CHECK(bd.is_breaker(137, 0));
    CHECK_FALSE(bd.is_breaker(0, 201));
    VertexSet mask(n);
    for (Vertex v = 150; v < 300; ++v) mask.set(v);
    CHECK(bd.dB_in(0, mask) == 51);
}

TEST_CASE("lowest free edge cursor") {
    Board bd(4);
    CHECK(bd.lowest_free_edge() == EdgeId{0, 1});
    bd.claim_breaker(0, 1);
    bd.claim_walker(0, 2);
    CHECK(bd.lowest_free_edge() == EdgeId{0, 3});
    bd.claim_breaker(0, 3);
    bd.claim_breaker(1, 2);
    CHECK(bd.lowest_free_edge() == EdgeId{1, 3});
    bd.claim_walker(1, 3);
    bd.claim_walker(2, 3);
    CHECK_FALSE(bd.lowest_free_edge().has_value());
}

TEST_CASE("random free edge is always free") {
    Board bd(8);
    Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        EdgeId e = bd.random_free_edge(rng);
        CHECK(bd.is_free(e.u, e.v));
        bd.claim_breaker(e.u, e.v);
    }
}

TEST_CASE("walk mechanics") {
    GameConfig cfg;
    cfg.n = 5;
    cfg.start_policy = StartPolicy::StrategyChosen;
    Game g = new_game(cfg);
    CHECK_THROWS_AS(g.position(), NoPosition);
    g.set_start(0);
    CHECK_THROWS_AS(g.set_start(1), IllegalMove);
    CHECK(g.position() == 0);
    CHECK(g.visited_count() == 1);
    g.walker_step(1);
    g.walker_step(2);
    CHECK(g.round() == 2);
    CHECK(g.visited_count() == 3);
    g.walker_step(1); // reuse 1-2
    CHECK(g.move_log().back().reused);
    CHECK(g.visited_count() == 3);
    CHECK_THROWS_AS(g.walker_step(1), IllegalMove); // self loop
    g.board().claim_breaker(1, 4);
    CHECK_THROWS_AS(g.walker_step(4), IllegalMove); // breaker edge

    auto tgts = g.legal_walker_targets();
    CHECK(tgts == std::vector<Vertex>{0, 2, 3});
}

TEST_CASE("breaker claim size is enforced") {
    GameConfig cfg;
    cfg.n = 4;
    cfg.b = 2;
    Game g = new_game(cfg);
    std::vector<EdgeId> one{EdgeId::make(1, 2)};
    CHECK_THROWS_AS(g.breaker_claim(one), IllegalClaim);
    std::vector<EdgeId> dup{EdgeId::make(1, 2), EdgeId::make(2, 1)};
    CHECK_THROWS_AS(g.breaker_claim(dup), IllegalClaim);
    std::vector<EdgeId> ok{EdgeId::make(1, 2), EdgeId::make(1, 3)};
    g.breaker_claim(ok);
    CHECK(g.board().breaker_edges() == 2);
}

TEST_CASE("certificate validation") {
    GameConfig cfg;
    cfg.n = 6;
    Game g = new_game(cfg);
    g.walker_step(1);
    g.walker_step(2);
    g.walker_step(0);

    Certificate cyc{Certificate::Kind::Cycle, {0, 1, 2}};
    CHECK(validate_certificate(g, cyc));
    Certificate bad{Certificate::Kind::Cycle, {0, 1, 3}};
    CHECK_FALSE(validate_certificate(g, bad));
    Certificate rep{Certificate::Kind::Cycle, {0, 1, 2, 1}};
    CHECK_FALSE(validate_certificate(g, rep));
    Certificate path{Certificate::Kind::Path, {2, 1, 0}};
    CHECK(validate_certificate(g, path));

    auto round = certificate_from_string(certificate_to_string(cyc));
    REQUIRE(round.has_value());
    CHECK(round->kind == Certificate::Kind::Cycle);
    CHECK(round->vertices == cyc.vertices);
}

TEST_CASE("transcript round trip and replay") {
    GameConfig cfg;
    cfg.n = 12;
    cfg.b = 2;
    cfg.rng_seed = 99;
    RandomWalker w(derive_seed(cfg.rng_seed, 1));
    RandomBreaker b(derive_seed(cfg.rng_seed, 2));
    MatchResult r = run_match(cfg, w, b, stop_after_rounds(20));
    CHECK(r.outcome == MatchOutcome::Stopped);
    CHECK(r.rounds == 20);

    std::string text = r.transcript.serialize();
    Transcript t = Transcript::parse_string(text);
    CHECK(t.config.n == 12);
    CHECK(t.config.b == 2);
    ReplayReport rep = replay(t);
    CHECK(rep.moves_replayed == (int)t.lines.size() - 0);

    // flip one walker target to break the walk
    auto tampered = t;
    for (auto& ln : tampered.lines)
        if (ln.kind == Transcript::Line::Kind::Walker) {
            ln.move.to = (ln.move.to + 1) % cfg.n;
            break;
        }
    CHECK_THROWS_AS(replay(tampered), GameError);
}

TEST_CASE("replay rejects tampered text") {
    GameConfig cfg;
    cfg.n = 8;
    RandomWalker w(3);
    RandomBreaker b(4);
    MatchResult r = run_match(cfg, w, b, stop_after_rounds(10));
    std::string text = r.transcript.serialize();
    // duplicate the last breaker line: illegal second claim of same edge
    auto pos = text.rfind("B ");
    REQUIRE(pos != std::string::npos);
    auto eol = text.find('\n', pos);
    std::string line = text.substr(pos, eol - pos + 1);
    text.insert(eol + 1, line);
    CHECK_THROWS_AS(replay(Transcript::parse_string(text)), GameError);
}

TEST_CASE("isolate1 keeps its vertex unvisited when moving first") {
    GameConfig cfg;
    cfg.n = 10;
    cfg.first_mover = Player::Breaker;
    RandomWalker w(11);
    IsolateOneBreaker b;
    MatchResult r = run_match(cfg, w, b, stop_after_rounds(200));
    REQUIRE(b.fixed_vertex().has_value());
    CHECK_FALSE(r.final_state->visited().test(*b.fixed_vertex()));
}

TEST_CASE("isolateB keeps all b targets unvisited when moving first") {
    GameConfig cfg;
    cfg.n = 20;
    cfg.b = 3;
    cfg.first_mover = Player::Breaker;
    RandomWalker w(5);
    MultiIsolateBreaker b;
    MatchResult r = run_match(cfg, w, b, stop_after_rounds(300));
    REQUIRE(b.targets().size() == 3);
    for (Vertex t : b.targets()) CHECK_FALSE(r.final_state->visited().test(t));
}

TEST_CASE("prevent-n2 switches phase at n-2 visited") {
    GameConfig cfg;
    cfg.n = 9;
    cfg.rng_seed = 17;
    for (uint64_t s = 0; s < 30; ++s) {
        RandomWalker w(s);
        PreventLongCycleBreaker b;
        MatchResult r = run_match(cfg, w, b);
        CHECK((r.outcome == MatchOutcome::BoardExhausted ||
               r.outcome == MatchOutcome::WalkerStuck));
        if (b.phase() == PreventLongCycleBreaker::Phase::Two)
            CHECK(b.w2().has_value());
        else
            CHECK(r.final_state->visited_count() < cfg.n - 2);
    }
}

TEST_CASE("matches exhaust the board rather than loop forever") {
    GameConfig cfg;
    cfg.n = 6;
    cfg.b = 2;
    RandomWalker w(1);
    RandomBreaker b(2);
    MatchResult r = run_match(cfg, w, b);
    CHECK((r.outcome == MatchOutcome::BoardExhausted ||
           r.outcome == MatchOutcome::WalkerStuck));
    if (r.outcome == MatchOutcome::BoardExhausted)
        CHECK(r.final_state->board().free_edges() == 0);
}
