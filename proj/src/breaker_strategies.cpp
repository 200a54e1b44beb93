#include "wbl/breaker_strategies.hpp"

#include <algorithm>
#include <set>

namespace wbl {

namespace {

// Append e to edges unless it is already there or not free.
bool try_add(const Game& g, std::vector<EdgeId>& edges, Vertex a, Vertex b) {
    if (a == b) return false;
    if (!g.board().is_free(a, b)) return false;
    EdgeId e = EdgeId::make(a, b);
    if (std::find(edges.begin(), edges.end(), e) != edges.end()) return false;
    edges.push_back(e);
    return true;
}

size_t claim_quota(const Game& g, size_t already) {
    int64_t free = g.board().free_edges() - (int64_t)already;
    int64_t want = (int64_t)g.config().b;
    return (size_t)std::min<int64_t>(std::max<int64_t>(free, 0), want);
}

} // namespace

void pad_with_lowest_free(const Game& g, std::vector<EdgeId>& edges) {
    size_t want = claim_quota(g, 0);
    if (edges.size() >= want) return;
    auto first = g.board().lowest_free_edge();
    if (!first) return;
    const int n = g.board().n();
    Vertex u = first->u, v = first->v;
    while (edges.size() < want && u < n - 1) {
        if (g.board().is_free(u, v)) try_add(g, edges, u, v);
        if (++v >= n) { ++u; v = u + 1; }
    }
}

std::vector<EdgeId> IsolateOneBreaker::claim(const Game& g) {
    if (!fixed_) {
        // Lowest vertex the Walker has not touched yet.
        for (Vertex v = 0; v < g.board().n(); ++v)
            if (!g.visited().test(v)) { fixed_ = v; break; }
    }
    std::vector<EdgeId> edges;
    try_add(g, edges, *fixed_, g.position());
    pad_with_lowest_free(g, edges);
    return edges;
}

std::vector<EdgeId> MultiIsolateBreaker::claim(const Game& g) {
    if (targets_.empty()) {
        for (Vertex v = 0; v < g.board().n() && (int)targets_.size() < g.config().b; ++v)
            if (!g.visited().test(v)) targets_.push_back(v);
    }
    std::vector<EdgeId> edges;
    for (Vertex t : targets_) try_add(g, edges, t, g.position());
    pad_with_lowest_free(g, edges);
    return edges;
}

std::vector<EdgeId> PreventLongCycleBreaker::claim(const Game& g) {
    const Vertex pos = g.position();
    const Vertex v0 = g.visit_order().empty() ? pos : g.visit_order().front();
    const size_t want = claim_quota(g, 0);
    std::vector<EdgeId> edges;

    if (w1_ < 0) {
        // First response: pick w1 untouched and take v0w1 immediately.
        for (Vertex v = 0; v < g.board().n(); ++v)
            if (!g.visited().test(v)) { w1_ = v; break; }
        try_add(g, edges, v0, w1_);
    }

    if (phase_ == Phase::One && g.visited_count() >= g.board().n() - 2) {
        // Exactly two outsiders remain; the vertex Walker just reached is
        // v'. Guard it against the second outsider from now on.
        phase_ = Phase::Two;
        for (Vertex v = 0; v < g.board().n(); ++v)
            if (!g.visited().test(v) && v != w1_) { w2_ = v; break; }
        if (!w2_) w2_ = w1_; // w1 got visited somehow; degrade gracefully
    }

    if (edges.size() < want) {
        if (phase_ == Phase::One)
            try_add(g, edges, w1_, pos);
        else
            try_add(g, edges, *w2_, pos);
    }
    pad_with_lowest_free(g, edges);
    return edges;
}

std::vector<EdgeId> RandomBreaker::claim(const Game& g) {
    std::vector<EdgeId> edges;
    size_t want = claim_quota(g, 0);
    size_t attempts = 0;
    while (edges.size() < want && attempts < 64 * want + 64) {
        EdgeId e = g.board().random_free_edge(rng_);
        if (std::find(edges.begin(), edges.end(), e) == edges.end())
            edges.push_back(e);
        ++attempts;
    }
    pad_with_lowest_free(g, edges); // only kicks in if sampling stalled
    return edges;
}

std::vector<EdgeId> BlockStartBreaker::claim(const Game& g) {
    const Vertex v0 = g.visit_order().empty() ? g.position() : g.visit_order().front();
    std::vector<EdgeId> edges;
    try_add(g, edges, v0, g.position());
    pad_with_lowest_free(g, edges);
    return edges;
}

std::optional<Vertex> RandomWalker::next_step(const Game& g) {
    auto targets = g.legal_walker_targets();
    if (targets.empty()) return std::nullopt;
    return targets[rng_.below(targets.size())];
}

} // namespace wbl
