#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "wbl/breaker_strategies.hpp"
#include "wbl/diameter_builder.hpp"

using namespace wbl;

namespace {

// Independent tree checks against the final board: every parent edge must
// be Walker-owned, depths must chain, and the diameter is recomputed here
// with a double BFS that shares no code with the strategy's report().
struct TreeAudit {
    int vertices = 0;
    int depth = 0;
    int diameter = 0;
};

TreeAudit audit_tree(const PropTreeWalker& w, const Game& g) {
    const auto& par = w.parent();
    const int n = (int)par.size();
    TreeAudit a;
    std::vector<std::vector<Vertex>> adj(n);
    Vertex root = -1;
    std::vector<int> depth_check(n, -1);
    // roots first, then peel depths
    std::vector<Vertex> order;
    for (Vertex v = 0; v < n; ++v) {
        if (par[v] >= 0) {
            REQUIRE(g.board().is_walker(v, par[v]));
            adj[v].push_back(par[v]);
            adj[par[v]].push_back(v);
        } else if (g.visited().test(v)) {
            REQUIRE(root == -1); // single root
            root = v;
        }
    }
    REQUIRE(root >= 0);
    depth_check[root] = 0;
    std::vector<Vertex> q{root};
    for (size_t i = 0; i < q.size(); ++i) {
        Vertex u = q[i];
        ++a.vertices;
        a.depth = std::max(a.depth, depth_check[u]);
        for (Vertex x : adj[u])
            if (depth_check[x] < 0) {
                depth_check[x] = depth_check[u] + 1;
                q.push_back(x);
            }
    }
    for (Vertex v = 0; v < n; ++v)
        if (par[v] >= 0) REQUIRE(depth_check[v] == depth_check[par[v]] + 1);
    auto far = [&](Vertex s, int& best) {
        std::vector<int> d(n, -1);
        std::vector<Vertex> bq{s};
        d[s] = 0;
        Vertex fv = s;
        for (size_t i = 0; i < bq.size(); ++i) {
            Vertex u = bq[i];
            if (d[u] > d[fv]) fv = u;
            for (Vertex x : adj[u])
                if (d[x] < 0) { d[x] = d[u] + 1; bq.push_back(x); }
        }
        best = d[fv];
        return fv;
    };
    int dist = 0;
    Vertex e1 = far(root, dist);
    far(e1, dist);
    a.diameter = dist;
    return a;
}

bool transcript_has(const MatchResult& res, const std::string& needle) {
    return res.transcript.serialize().find(needle) != std::string::npos;
}

} // namespace

TEST_CASE("builder params at reference scale") {
    auto prof = paper_profile();
    auto p = make_builder_params(100000, 1, prof);
    CHECK(p.s1 == 500);
    CHECK(p.s2 == 1000);
    // ln(1e5)/ln(500), fifth digit frozen
    CHECK(p.r == doctest::Approx(1.85256).epsilon(1e-4));
    CHECK(p.floor_r == 1);
    CHECK(p.c2 == 4);
    CHECK(p.c1 == doctest::Approx(0.25));
    CHECK(p.tree_target == 25000);
    CHECK(p.stage2_exit == 200);
    CHECK(p.stage3_stop == 400);
    CHECK(p.diameter_bound == 8);

    auto p50 = make_builder_params(100000, 50, prof);
    CHECK(p50.floor_r == 5); // n/(200b) = 10 exactly
    CHECK(p50.diameter_bound == 16);

    CHECK_THROWS_AS(make_builder_params(100000, 0, prof), InvalidConfig);
    // b = floor(n / ln^2 n): n/(200b) < 1, r undefined
    CHECK_THROWS_AS(make_builder_params(100000, 754, prof), InvalidConfig);
    CHECK_THROWS_AS(make_builder_params(1000, 5, prof), InvalidConfig);
}

TEST_CASE("attach_star drill") {
    GameConfig cfg;
    cfg.n = 30;
    cfg.b = 0;
    RandomBreaker idle(1);
    SUBCASE("size 3 on an empty board takes 5 moves") {
        Game g(cfg);
        CHECK(attach_star(g, idle, 0, 3) == 5);
        CHECK(g.visited_count() == 4);
        CHECK(g.board().walker_edges() == 3);
        CHECK(g.board().dW(0) == 3);
        CHECK(g.position() != 0); // ends on the last leaf
    }
    SUBCASE("precondition counts (2b+1)s free untouched neighbors") {
        GameConfig c2 = cfg;
        c2.n = 10;
        c2.b = 3;
        Game g(c2);
        CHECK_THROWS_AS(attach_star(g, idle, 0, 2), InsufficientFreeNeighbors);
        CHECK(attach_star(g, idle, 0, 1) == 1);
    }
    SUBCASE("walker must stand on the center") {
        Game g(cfg);
        CHECK_THROWS_AS(attach_star(g, idle, 5, 1), PreconditionFailed);
    }
    SUBCASE("breaker pressure on the center is priced in") {
        GameConfig c3 = cfg;
        c3.n = 100;
        c3.b = 2;
        Game g(c3);
        IsolateOneBreaker iso; // pins edges at a fixed untouched vertex
        iso.begin(g);
        CHECK(attach_star(g, iso, 0, 10) == 19);
        CHECK(g.board().dW(0) == 10);
    }
}

TEST_CASE("full build at reference scale vs random") {
    GameConfig cfg;
    cfg.n = 100000;
    cfg.b = 1;
    cfg.profile = "paper";
    RandomBreaker br(7);
    auto res = build_low_diameter_tree(cfg, br);
    CHECK(res.report.vertices >= cfg.n - 400);
    CHECK(res.report.diameter <= 8);
    CHECK(res.report.rounds <= 6 * cfg.n);
    CHECK(res.match.outcome == MatchOutcome::WalkerFinished);
    CHECK(transcript_has(res.match, "PROP STAGE II"));
    CHECK(transcript_has(res.match, "PROP STAGE III"));
    CHECK(transcript_has(res.match, "PROP DONE"));
    CHECK(res.report.to_json().find("\"diameter\"") != std::string::npos);
}

TEST_CASE("report agrees with an independent BFS audit") {
    GameConfig cfg;
    cfg.n = 100000;
    cfg.b = 20;
    cfg.profile = "paper";
    ConstantsProfile prof = paper_profile();
    PropTreeWalker walker(prof);
    RandomBreaker br(3);
    auto res = run_match(cfg, walker, br);
    auto rep = walker.report(*res.final_state);
    auto aud = audit_tree(walker, *res.final_state);
    CHECK(aud.vertices == rep.vertices);
    CHECK(aud.depth == rep.depth);
    CHECK(aud.diameter == rep.diameter);
    CHECK(rep.vertices >= cfg.n - 400 * cfg.b);
    CHECK(rep.diameter <= walker.params().diameter_bound);
    CHECK(rep.depth <= walker.params().c2 / 2 + 2);
}

TEST_CASE("build holds up against adversarial breakers") {
    GameConfig cfg;
    cfg.n = 100000;
    cfg.b = 5;
    cfg.profile = "paper";
    SUBCASE("multi isolate") {
        MultiIsolateBreaker br;
        auto res = build_low_diameter_tree(cfg, br);
        CHECK(res.report.vertices >= cfg.n - 400 * cfg.b);
        CHECK(res.report.diameter <= 10); // floor_r = 2 at b = 5
    }
    SUBCASE("prevent-n2 at b=1") {
        cfg.b = 1;
        PreventLongCycleBreaker br;
        auto res = build_low_diameter_tree(cfg, br);
        CHECK(res.report.vertices >= cfg.n - 400);
        CHECK(res.report.diameter <= 8);
    }
}

TEST_CASE("scaled profile smoke at small n") {
    for (int n : {200, 400}) {
        for (int b : {1, 2}) {
            GameConfig cfg;
            cfg.n = n;
            cfg.b = b;
            cfg.profile = "scaled";
            for (uint64_t seed : {11ull, 12ull, 13ull}) {
                RandomBreaker br(seed);
                auto res = build_low_diameter_tree(cfg, br);
                auto p = make_builder_params(n, b, scaled_profile(n));
                CHECK(res.report.vertices >= n - p.stage3_stop);
                CHECK(res.report.diameter <= p.diameter_bound);
                CHECK(res.report.rounds <= 6 * n);
            }
        }
    }
}

TEST_CASE("deterministic given the seed") {
    GameConfig cfg;
    cfg.n = 5000;
    cfg.b = 3;
    cfg.profile = "paper";
    auto go = [&] {
        RandomBreaker br(99);
        return build_low_diameter_tree(cfg, br).match.transcript.serialize();
    };
    CHECK(go() == go());
}
