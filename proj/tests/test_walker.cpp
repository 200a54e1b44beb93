#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "wbl/breaker_strategies.hpp"
#include "wbl/walker_unbiased.hpp"

using namespace wbl;

TEST_CASE("property P boundaries") {
    CHECK(check_property_P({4, 5, 10}, 0, 0));
    CHECK_FALSE(check_property_P({5, 5, 10}, 0, 0));
    CHECK(check_property_P({6, 7, 14}, 1, -1));
    CHECK_FALSE(check_property_P({6, 8, 14}, 1, -1));
    CHECK_FALSE(check_property_P({6, 7, 15}, 1, -1));
}

TEST_CASE("V_t on an empty board is empty") {
    Board bd(44);
    VertexSet u(44);
    u.fill();
    u.reset(0);
    CHECK(compute_Vt(bd, u, 4).empty());
}

TEST_CASE("V_t boundary membership") {
    const int n = 22; // threshold ceil(22/11) = 2
    Board bd(n);
    VertexSet u(n);
    u.fill();
    for (Vertex v = 0; v < 4; ++v) u.reset(v); // touched: 0..3
    bd.claim_breaker(10, 0);
    bd.claim_breaker(10, 1);
    bd.claim_breaker(11, 0); // one short of the threshold
    bd.claim_breaker(11, 12); // inside U, does not count
    auto vt = compute_Vt(bd, u, 2);
    CHECK(vt == std::vector<Vertex>{10});
}

TEST_CASE("V_t matches a brute-force recount on random boards") {
    for (uint64_t seed = 0; seed < 20; ++seed) {
        const int n = 60;
        Rng rng(seed);
        Board bd(n);
        for (int k = 0; k < 150; ++k) {
            Vertex a = rng.below_int(n), b = rng.below_int(n);
            if (a != b && bd.is_free(a, b)) bd.claim_breaker(a, b);
        }
        VertexSet u(n);
        u.fill();
        for (int k = 0; k < 25; ++k) u.reset(rng.below_int(n));
        int thr = 3;
        auto fast = compute_Vt(bd, u, thr);
        std::vector<Vertex> slow;
        for (Vertex v = 0; v < n; ++v) {
            if (!u.test(v)) continue;
            int d = 0;
            for (Vertex w = 0; w < n; ++w)
                if (!u.test(w) && w != v && bd.is_breaker(v, w)) ++d;
            if (d >= thr) slow.push_back(v);
        }
        CHECK(fast == slow);
    }
}

namespace {

Game cycle_position(int n, int L, const GameConfig& base) {
    GameConfig cfg = base;
    cfg.n = n;
    Game g = new_game(cfg);
    std::vector<EdgeId> edges;
    for (int i = 0; i < L; ++i) edges.push_back(EdgeId::make(i, (i + 1) % L));
    g.preclaim_walker(edges, 0);
    return g;
}

} // namespace

TEST_CASE("extension on an empty Breaker board takes at most four rounds") {
    const int n = 2000;
    Game g = cycle_position(n, n - 3, {});
    std::vector<Vertex> cyc(n - 3);
    for (int i = 0; i < n - 3; ++i) cyc[i] = i;
    RandomBreaker br(1);
    int before = g.round();
    Certificate out =
        extend_cycle(g, br, {Certificate::Kind::Cycle, cyc}, paper_profile());
    CHECK((int)out.vertices.size() == n - 2);
    CHECK(g.round() - before <= 4);
    CHECK(validate_certificate(g, out));
}

TEST_CASE("two heavy outsiders fail the precondition") {
    const int n = 2000;
    Game g = cycle_position(n, n - 3, {});
    std::vector<EdgeId> heavy;
    for (Vertex y : {(Vertex)(n - 3), (Vertex)(n - 2)})
        for (Vertex c = 1; c <= 210; ++c) heavy.push_back(EdgeId::make(y, c));
    g.preclaim_breaker(heavy);
    std::vector<Vertex> cyc(n - 3);
    for (int i = 0; i < n - 3; ++i) cyc[i] = i;
    RandomBreaker br(1);
    CHECK_THROWS_AS(
        extend_cycle(g, br, {Certificate::Kind::Cycle, cyc}, paper_profile()),
        PreconditionFailed);
}

TEST_CASE("extension succeeds on seeded random boards") {
    const int n = 500;
    ConstantsProfile prof = scaled_profile(n);
    const int L = n - 10;
    int ran = 0;
    for (uint64_t seed = 0; seed < 200; ++seed) {
        Game g = cycle_position(n, L, GameConfig{.n = n, .profile = "scaled"});
        Rng rng(derive_seed(seed, 7));
        for (int k = 0; k < 600; ++k) {
            Vertex a = rng.below_int(n), b = rng.below_int(n);
            if (a != b && g.board().is_free(a, b)) {
                EdgeId e[] = {EdgeId::make(a, b)};
                g.preclaim_breaker(e);
            }
        }

        // exhaustive precondition audit; skip the seed if it violates them
        VertexSet cmask(n);
        for (int i = 0; i < L; ++i) cmask.set(i);
        int heavy = 0;
        for (Vertex y = L; y < n; ++y)
            if (g.board().dB_in(y, cmask) >= prof.extend_degree_frac * n) ++heavy;
        if (heavy > 1 || g.board().breaker_edges() > 2 * n) continue;
        ++ran;

        std::vector<Vertex> cyc(L);
        for (int i = 0; i < L; ++i) cyc[i] = i;
        RandomBreaker br(derive_seed(seed, 8));
        int before = g.round();
        Certificate out =
            extend_cycle(g, br, {Certificate::Kind::Cycle, cyc}, prof);
        CHECK((int)out.vertices.size() == L + 1);
        CHECK(g.round() - before < 25);
        CHECK(validate_certificate(g, out));
    }
    CHECK(ran >= 190); // the audit should only rarely reject a seed
}

TEST_CASE("full game against the prevention breaker") {
    GameConfig cfg;
    cfg.n = 2000;
    cfg.first_mover = Player::Breaker;
    PreventLongCycleBreaker br;
    MatchResult r = play_unbiased_cycle_game(cfg, br);
    CHECK(r.outcome == MatchOutcome::WalkerFinished);
    REQUIRE(r.certificate.has_value());
    CHECK(r.certificate_valid);
    CHECK((int)r.certificate->vertices.size() == cfg.n - 2);
    CHECK(r.rounds <= 2 * cfg.n);
}

TEST_CASE("full game against random breakers") {
    for (uint64_t s = 0; s < 5; ++s) {
        GameConfig cfg;
        cfg.n = 2000;
        cfg.first_mover = Player::Breaker;
        cfg.rng_seed = s;
        RandomBreaker br(derive_seed(s, 2));
        MatchResult r = play_unbiased_cycle_game(cfg, br);
        CHECK(r.certificate_valid);
        CHECK((int)r.certificate->vertices.size() >= cfg.n - 2);
        CHECK(r.rounds <= 2 * cfg.n);
    }
}

TEST_CASE("start-blocking breaker forces the Stage III path close") {
    GameConfig cfg;
    cfg.n = 2000;
    cfg.first_mover = Player::Breaker;
    BlockStartBreaker br;
    MatchResult r = play_unbiased_cycle_game(cfg, br);
    CHECK(r.certificate_valid);
    CHECK((int)r.certificate->vertices.size() == cfg.n - 2);
    std::string text = r.transcript.serialize();
    CHECK(text.find("STAGE III") != std::string::npos);
}

TEST_CASE("walker-first also works") {
    GameConfig cfg;
    cfg.n = 2000;
    cfg.first_mover = Player::Walker;
    PreventLongCycleBreaker br;
    MatchResult r = play_unbiased_cycle_game(cfg, br);
    CHECK(r.certificate_valid);
    CHECK((int)r.certificate->vertices.size() == cfg.n - 2);
}

TEST_CASE("paper profile rejects small boards") {
    GameConfig cfg;
    cfg.n = 50;
    PreventLongCycleBreaker br;
    CHECK_THROWS_AS(play_unbiased_cycle_game(cfg, br), GameError);
}

TEST_CASE("scaled profile handles small boards") {
    for (int n : {120, 300}) {
        GameConfig cfg;
        cfg.n = n;
        cfg.profile = "scaled";
        cfg.first_mover = Player::Breaker;
        PreventLongCycleBreaker br;
        MatchResult r = play_unbiased_cycle_game(cfg, br);
        CHECK(r.certificate_valid);
        CHECK((int)r.certificate->vertices.size() == n - 2);
    }
}

TEST_CASE("matches are deterministic") {
    auto play = [] {
        GameConfig cfg;
        cfg.n = 2000;
        cfg.first_mover = Player::Breaker;
        cfg.rng_seed = 11;
        RandomBreaker br(derive_seed(cfg.rng_seed, 2));
        return play_unbiased_cycle_game(cfg, br).transcript.serialize();
    };
    CHECK(play() == play());
}
