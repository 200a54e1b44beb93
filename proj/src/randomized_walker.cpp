#include "wbl/randomized_walker.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "wbl/diameter_builder.hpp"
#include "wbl/graph_checks.hpp"

namespace wbl {

// ---- config --------------------------------------------------------------

std::vector<std::string> RandConfig::validate() const {
    std::vector<std::string> warn;
    if (n < 3) throw InvalidConfig("randomized strategy needs n >= 3");
    if (!(p > 0.0 && p <= 1.0)) throw InvalidConfig("p must be in (0,1]");
    if (d < 1 || b < 0 || epsilon <= 0.0)
        throw InvalidConfig("bad d, b or epsilon");
    const bool hard = profile == "paper";
    auto flag = [&](const std::string& msg) {
        if (hard) throw InvalidConfig(msg);
        warn.push_back(msg);
    };
    if (epsilon >= 1e-5) flag("epsilon must be < 1e-5");
    if (p < std::log((double)n) / (epsilon * n))
        flag("p below ln n / (epsilon n)");
    if ((double)b > epsilon / (30.0 * (d + 1) * p))
        flag("bias exceeds epsilon / (30(d+1)p)");
    return warn;
}

// ---- router --------------------------------------------------------------

W0Router::W0Router(const Board& bd, const VertexSet& w0_vertices) {
    const int n = bd.n();
    idx_.assign(n, -1);
    for (int v = w0_vertices.next(0); v >= 0; v = w0_vertices.next(v + 1)) {
        idx_[v] = (int32_t)verts_.size();
        verts_.push_back(v);
    }
    m_ = (int)verts_.size();
    if (m_ > INT16_MAX)
        throw InvalidConfig("W0 router limited to 32767 vertices");
    std::vector<std::vector<int16_t>> adj(m_);
    for (int a = 0; a < m_; ++a)
        bd.walker_adj(verts_[a]).for_each([&](Vertex w) {
            if (idx_[w] >= 0) adj[a].push_back((int16_t)idx_[w]);
        });
    hop_.assign((size_t)m_ * m_, -1);
    dist_.assign((size_t)m_ * m_, -1);
    std::vector<int16_t> q(m_);
    for (int s = 0; s < m_; ++s) {
        int16_t* hop = &hop_[(size_t)s * m_];
        int16_t* dst = &dist_[(size_t)s * m_];
        int head = 0, tail = 0;
        q[tail++] = (int16_t)s;
        dst[s] = 0;
        hop[s] = (int16_t)s;
        while (head < tail) {
            int16_t u = q[head++];
            for (int16_t w : adj[u])
                if (dst[w] < 0) {
                    dst[w] = (int16_t)(dst[u] + 1);
                    hop[w] = u; // next step from w toward s
                    q[tail++] = w;
                }
        }
    }
}

int W0Router::dist(Vertex from, Vertex to) const {
    int a = idx_[from], c = idx_[to];
    if (a < 0 || c < 0) return -1;
    return dist_[(size_t)c * m_ + a];
}

Vertex W0Router::next_hop(Vertex from, Vertex to) const {
    int a = idx_[from], c = idx_[to];
    if (a < 0 || c < 0) throw NoPosition("vertex not on W0");
    int16_t h = hop_[(size_t)c * m_ + a];
    if (h < 0) throw NoPosition("no W0 path between vertices");
    return verts_[h];
}

// ---- precheck ------------------------------------------------------------

PrecheckReport check_preconditions(const Game& g,
                                   const std::vector<Vertex>& universe,
                                   const RandConfig& cfg) {
    PrecheckReport rep;
    const Board& bd = g.board();
    VertexSet uni(bd.n());
    for (Vertex v : universe) uni.set(v);
    rep.min_free_degree = (int)universe.size();
    const double floor_deg = (1.0 - cfg.epsilon) * (double)universe.size();
    for (Vertex v : universe) {
        int df = (int)universe.size() - 1 - bd.dB_in(v, uni) - bd.dW_in(v, uni);
        rep.min_free_degree = std::min(rep.min_free_degree, df);
        if ((double)df < floor_deg) {
            rep.ok = false;
            rep.violations.push_back("d_F(" + std::to_string(v) + ") = " +
                                     std::to_string(df) + " below (1-eps)N");
        }
    }
    W0Router router(bd, g.visited());
    for (Vertex u : universe)
        for (Vertex v : universe) {
            if (u >= v) continue;
            int dd = router.covers(u) && router.covers(v) ? router.dist(u, v) : -1;
            if (dd < 0 || dd > cfg.d) {
                rep.ok = false;
                rep.violations.push_back(
                    "W0 distance " + std::to_string(u) + "-" +
                    std::to_string(v) + " is " + std::to_string(dd));
                if (rep.violations.size() > 20) return rep;
            }
            rep.max_pair_dist = std::max(rep.max_pair_dist, dd);
        }
    return rep;
}

// ---- exposure state ------------------------------------------------------

ExposureState::ExposureState(const Game& g, std::vector<Vertex> universe,
                             const RandConfig& cfg)
    : verts_(std::move(universe)),
      minbox_((int)verts_.size(), 4 * (int64_t)verts_.size(), cfg.p / 2.0,
              2 * cfg.b * (cfg.d + 1)),
      router_(g.board(), g.visited()),
      p_(cfg.p) {
    const Board& bd = g.board();
    idx_.assign(bd.n(), -1);
    for (size_t a = 0; a < verts_.size(); ++a) idx_[verts_[a]] = (int32_t)a;
    const int m = (int)verts_.size();
    U_.assign(m, VertexSet(bd.n()));
    H_.assign(m, VertexSet(bd.n()));
    F0_.assign(m, VertexSet(bd.n()));
    fI_.assign(m, 0);
    fII_.assign(m, 0);
    d_new_.assign(m, 0);
    for (int a = 0; a < m; ++a)
        for (int c = 0; c < m; ++c) {
            if (a == c) continue;
            U_[a].set(verts_[c]);
            if (bd.is_free(verts_[a], verts_[c])) F0_[a].set(verts_[c]);
        }
}

bool ExposureState::exposed(Vertex u, Vertex v) const {
    return !U_[idx_[u]].test(v);
}

bool ExposureState::in_H(Vertex u, Vertex v) const {
    return H_[idx_[u]].test(v);
}

bool ExposureState::was_free_at_start(Vertex u, Vertex v) const {
    return F0_[idx_[u]].test(v);
}

void ExposureState::mark_exposed(int lu, int lv) {
    U_[lu].reset(verts_[lv]);
    U_[lv].reset(verts_[lu]);
}

void ExposureState::note_new_walker_edge(Vertex u, Vertex v) {
    ++d_new_[idx_[u]];
    ++d_new_[idx_[v]];
}

void ExposureState::breaker_update(const std::vector<EdgeId>& edges) {
    // one simulated element per endpoint, for edges inside the universe
    // only (an edge with an endpoint outside V* can never block an
    // exposure); clamped to the room left in the box
    std::vector<std::pair<int, int64_t>> alloc;
    auto add = [&](Vertex v) {
        int i = idx_[v];
        for (auto& [j, c] : alloc)
            if (j == i) { ++c; return; }
        alloc.push_back({i, 1});
    };
    for (const EdgeId& e : edges) {
        if (idx_[e.u] < 0 || idx_[e.v] < 0) continue;
        add(e.u);
        add(e.v);
    }
    for (auto& [i, c] : alloc) {
        int64_t room = minbox_.box(i).size - minbox_.box(i).w_M -
                       minbox_.box(i).w_B;
        c = std::min(c, room);
    }
    std::erase_if(alloc, [](auto& pr) { return pr.second <= 0; });
    minbox_.breaker_claim_elements(alloc);
}

std::optional<Vertex> ExposureState::select_exposure_vertex() {
    if (red_) throw StrategyFault("exposure vertex already chosen");
    auto mv = minbox_.maker_move_max_danger();
    if (!mv) return std::nullopt; // Stage II signal
    red_ = verts_[*mv];
    rounds_red_ = 0;
    return red_;
}

ExposureState::ExposeResult ExposureState::expose(Game& g, Rng& rng) {
    if (!red_) throw NotRed("no red vertex");
    Vertex v = *red_;
    if (g.position() != v) throw NotAtRedVertex("walker is not at the red vertex");
    const int lv = idx_[v];
    ExposeResult res{ExposeOutcome::TypeI, -1, 0};
    // sigma: ascending vertex index over U_v
    for (int u = U_[lv].next(0); u >= 0; u = U_[lv].next(u + 1)) {
        ++res.tosses;
        bool success = rng.coin(p_);
        mark_exposed(lv, idx_[u]);
        if (!success) continue;
        H_[lv].set(u);
        H_[idx_[u]].set(v);
        if (g.board().is_free(v, u)) {
            res.outcome = ExposeOutcome::Claimed;
            res.target = u;
            g.walker_step(u);
            note_new_walker_edge(v, u);
            minbox_.maker_grant(idx_[u], 1);
        } else {
            res.outcome = ExposeOutcome::TypeII;
            res.target = u;
            ++fII_[lv];
            ++fII_[idx_[u]];
        }
        clear_red();
        return res;
    }
    // no success over all of U_v: failure of type I
    ++fI_[lv];
    int64_t grant = (int64_t)std::floor(2.0 * p_ * (double)verts_.size()) - 1;
    minbox_.maker_grant(lv, std::max<int64_t>(grant, 0));
    U_[lv].clear();
    for (int a = 0; a < (int)verts_.size(); ++a) U_[a].reset(v);
    clear_red();
    return res;
}

void ExposureState::stage2_flush(Rng& rng) {
    for (int a = 0; a < (int)verts_.size(); ++a) {
        Vertex u = verts_[a];
        for (int w = U_[a].next(0); w >= 0; w = U_[a].next(w + 1)) {
            if (w <= u) continue; // each unexposed edge once
            mark_exposed(a, idx_[w]);
            if (rng.coin(p_)) {
                H_[a].set(w);
                H_[idx_[w]].set(u);
                ++fII_[a];
                ++fII_[idx_[w]];
            }
        }
    }
}

// ---- main loop -----------------------------------------------------------

std::string RunReport::to_json() const {
    nlohmann::json j{{"seed", seed},       {"n", n},
                     {"b", b},             {"p", p},
                     {"epsilon", epsilon}, {"d", d},
                     {"max_fII", max_fII}, {"min_dH", min_dH},
                     {"min_ratio", min_ratio},
                     {"max_active_danger", max_active_danger}};
    j["hamiltonian"] = hamiltonian ? nlohmann::json(*hamiltonian)
                                   : nlohmann::json(nullptr);
    j["has_Ck"] = has_Ck ? nlohmann::json(*has_Ck) : nlohmann::json(nullptr);
    return j.dump();
}

RandResult run_randomized_strategy(Game& g, const std::vector<Vertex>& universe,
                                   const RandConfig& cfg,
                                   BreakerStrategy& breaker) {
    cfg.validate();
    const bool hard = cfg.profile == "paper";
    ExposureState st(g, universe, cfg);
    Rng rng(derive_seed(cfg.seed, 0xe0));
    RandResult out;

    VertexSet uni(g.board().n());
    for (Vertex v : universe) uni.set(v);

    auto breaker_turn = [&] {
        if (g.board().free_edges() == 0) return;
        auto edges = breaker.claim(g);
        g.breaker_claim(edges);
        st.breaker_update(edges);
    };

    const int64_t round_cap =
        1000LL * cfg.n + 200LL * (int64_t)(cfg.p * cfg.n * (double)cfg.n) + 100000;
    int64_t rounds = 0;
    int64_t max_danger = 0;

    if (g.config().first_mover == Player::Breaker && g.round() == 0 &&
        g.board().breaker_edges() == 0)
        breaker_turn();

    for (;;) {
        if (++rounds > round_cap)
            throw StrategyFault("randomized strategy exceeded round cap");
        if (!st.red()) {
            auto sel = st.select_exposure_vertex();
            max_danger = std::max(max_danger, st.minbox().max_active_danger());
            if (!sel) break; // Stage II
            // Claim 8: an active box implies small Breaker degree
            Vertex v = *sel;
            if (st.unexposed_at(v) > 0 &&
                (double)g.board().dB_in(v, uni) >=
                    cfg.epsilon * (double)universe.size() / 5.0) {
                ++out.claim8_violations;
                if (hard)
                    throw PreconditionFailed(
                        "active box with large Breaker degree at " +
                        std::to_string(v));
            }
        }
        Vertex v = *st.red();
        st.tick_red();
        if (st.rounds_red() > cfg.d + 1) {
            ++out.claim6_violations;
            if (hard) throw PreconditionFailed("red not cleared within d+1 rounds");
            st.clear_red(); // scaled: drop the stuck exposure
            continue;
        }
        if (g.position() != v) {
            g.walker_step(st.router().next_hop(g.position(), v)); // Case 1
        } else {
            auto res = st.expose(g, rng); // Case 2
            if (res.outcome == ExposureState::ExposeOutcome::Claimed) {
                out.new_edges.push_back(EdgeId::make(v, res.target));
            } else {
                // 2a / 2b-blocked: finish the move on a W0 edge
                Vertex back = -1;
                int best = -1;
                g.board().walker_adj(g.position()).for_each([&](Vertex w) {
                    if (st.router().covers(w) && (best < 0 || w < best)) {
                        best = w;
                        back = w;
                    }
                });
                if (back < 0) throw StrategyStuck("no W0 edge to reuse");
                g.walker_step(back);
            }
        }
        breaker_turn();
    }

    st.stage2_flush(rng);

    // Claim 7 box-count bounds
    const int N = (int)universe.size();
    for (int i = 0; i < N; ++i) {
        const auto& bx = st.minbox().box(i);
        if (bx.w_B >= N || (double)bx.w_M >= (1.0 + 2.0 * cfg.p) * N) {
            ++out.claim7_violations;
            if (hard)
                throw PreconditionFailed("box count bound violated at box " +
                                         std::to_string(i));
        }
    }

    RunReport& rep = out.report;
    rep.seed = cfg.seed;
    rep.n = N;
    rep.b = cfg.b;
    rep.p = cfg.p;
    rep.epsilon = cfg.epsilon;
    rep.d = cfg.d;
    rep.max_active_danger = max_danger;
    rep.min_dH = INT32_MAX;
    rep.min_ratio = 1.0;
    for (Vertex v : universe) {
        int dh = st.dH(v);
        int fii = st.fII(v);
        int dnew = st.dWnew(v);
        if (dnew < dh - fii)
            throw StrategyFault("degree reduction identity violated at " +
                                std::to_string(v));
        rep.max_fII = std::max(rep.max_fII, fii);
        rep.min_dH = std::min(rep.min_dH, dh);
        if (dh > 0)
            rep.min_ratio = std::min(rep.min_ratio, (double)dnew / (double)dh);
        for (int w = 0; w < g.board().n(); ++w)
            if (w > v && st.in_H(v, w))
                out.H_edges.push_back({v, w});
    }
    if (rep.min_dH == INT32_MAX) rep.min_dH = 0;
    return out;
}

// ---- V* selection --------------------------------------------------------

std::vector<Vertex> select_Vstar(const Board& bd,
                                 const std::vector<Vertex>& Vprime,
                                 int target_size, double max_degree) {
    if ((int)Vprime.size() < target_size)
        throw SelectionFailed("V' smaller than the target size");
    VertexSet in(bd.n());
    for (Vertex v : Vprime) in.set(v);
    std::vector<int> deg(bd.n(), -1);
    for (Vertex v : Vprime) deg[v] = bd.dB_in(v, in) + bd.dW_in(v, in);
    int size = (int)Vprime.size();
    while (size > target_size) {
        Vertex worst = -1;
        for (Vertex v : Vprime) // highest index wins ties
            if (in.test(v) && (worst < 0 || deg[v] >= deg[worst])) worst = v;
        in.reset(worst);
        --size;
        bd.breaker_adj(worst).for_each([&](Vertex w) { if (in.test(w)) --deg[w]; });
        bd.walker_adj(worst).for_each([&](Vertex w) { if (in.test(w)) --deg[w]; });
    }
    std::vector<Vertex> out;
    for (Vertex v : Vprime)
        if (in.test(v)) {
            if ((double)deg[v] >= max_degree)
                throw SelectionFailed("max degree not reached: d(" +
                                      std::to_string(v) + ") = " +
                                      std::to_string(deg[v]));
            out.push_back(v);
        }
    return out;
}

// ---- compositions --------------------------------------------------------

namespace {

RunReport compose_common(const ComposeConfig& cc, int target_size,
                         double max_degree, double p, double epsilon, int d_cap,
                         bool check_ham, std::optional<int> detect_k) {
    GameConfig gc;
    gc.n = cc.n;
    gc.b = cc.b;
    gc.profile = cc.profile;
    gc.rng_seed = cc.seed;
    gc.record_moves = false;
    StrategyContext ctx{gc, make_profile(cc.profile, cc.n)};
    auto breaker = make_breaker(cc.breaker, ctx);

    PropTreeWalker walker(ctx.profile);
    auto built = run_match(gc, walker, *breaker);
    Game& g = *built.final_state;

    std::vector<Vertex> Vprime;
    for (Vertex v = 0; v < cc.n; ++v)
        if (g.visited().test(v)) Vprime.push_back(v);

    auto Vstar = select_Vstar(g.board(), Vprime, target_size, max_degree);

    RandConfig rc;
    rc.n = (int)Vstar.size();
    rc.b = cc.b;
    rc.epsilon = epsilon;
    rc.p = p;
    rc.d = std::max(walker.params().diameter_bound, d_cap);
    rc.seed = cc.seed;
    rc.profile = cc.profile;
    rc.validate();

    auto pre = check_preconditions(g, Vstar, rc);
    if (!pre.ok && cc.profile == "paper")
        throw PreconditionFailed("randomized preconditions: " +
                                 (pre.violations.empty() ? std::string("?")
                                                         : pre.violations[0]));

    auto res = run_randomized_strategy(g, Vstar, rc, *breaker);

    // local reindex of W'[V*] for the exact checks
    std::vector<int> local(cc.n, -1);
    for (size_t i = 0; i < Vstar.size(); ++i) local[Vstar[i]] = (int)i;
    std::vector<std::pair<int, int>> edges;
    for (const EdgeId& e : res.new_edges)
        edges.push_back({local[e.u], local[e.v]});
    if (check_ham && (int)Vstar.size() <= 60)
        res.report.hamiltonian = is_hamiltonian((int)Vstar.size(), edges);
    if (detect_k)
        res.report.has_Ck = contains_cycle_k((int)Vstar.size(), edges, *detect_k);
    return res.report;
}

} // namespace

RunReport compose_theorem2(const ComposeConfig& cc) {
    const bool paper = cc.profile == "paper";
    double eps = cc.epsilon;
    // paper: N = n - (400 + 60/eps) b; scaled shrinks the margin so that
    // n <= 60 smoke runs stay feasible
    double margin = paper ? (400.0 + 60.0 / eps) * cc.b
                          : std::ceil((10.0 + 2.0 / eps) * cc.b);
    int N = cc.n - (int)margin;
    if (N < 3) throw InvalidConfig("n too small for compose_theorem2");
    double p = std::log((double)cc.n) *
               std::log(std::log(std::log((double)cc.n))) / (double)cc.n;
    p = std::clamp(p, 1e-9, 1.0);
    double maxdeg = eps * (double)cc.n / 2.0;
    return compose_common(cc, N, maxdeg, p, eps, 1, true, std::nullopt);
}

RunReport compose_theorem3(const ComposeConfig& cc) {
    const int d = 2 * cc.k + 4;
    int N = cc.n / 2;
    if (N < cc.k) throw InvalidConfig("n too small for compose_theorem3");
    double p = cc.C * std::pow((double)N, -(double)(cc.k - 2) / (cc.k - 1));
    p = std::clamp(p, 1e-9, 1.0);
    double maxdeg = 24.0 * cc.b;
    return compose_common(cc, N, maxdeg, p, cc.gamma / 4.0, d, false, cc.k);
}

} // namespace wbl
