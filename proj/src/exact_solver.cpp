#include "wbl/exact_solver.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <queue>
#include <unordered_set>
#include <vector>

namespace wbl {

namespace {

constexpr uint16_t INF = std::numeric_limits<uint16_t>::max();

struct Tables {
    int n, E;
    int eidx[6][6];
    Vertex ends[15][2];
    uint32_t pow3[16];
    int ncodes;
    std::vector<uint16_t> wmask, fmask;   // per ownership code
    std::vector<uint8_t> longest;         // per walker edge mask
    std::vector<uint8_t> lengths;         // bit k set: C_k present

    explicit Tables(int n_) : n(n_) {
        if (n > 5) throw BudgetExceeded("exact solve limited to n <= 5");
        E = n * (n - 1) / 2;
        int e = 0;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                eidx[u][v] = eidx[v][u] = e;
                ends[e][0] = u;
                ends[e][1] = v;
                ++e;
            }
        pow3[0] = 1;
        for (int i = 1; i <= E; ++i) pow3[i] = pow3[i - 1] * 3;
        ncodes = (int)pow3[E];
        wmask.assign(ncodes, 0);
        fmask.assign(ncodes, 0);
        for (int code = 0; code < ncodes; ++code) {
            int c = code;
            for (int i = 0; i < E; ++i) {
                int d = c % 3;
                c /= 3;
                if (d == 1) wmask[code] |= 1u << i;
                else if (d == 0) fmask[code] |= 1u << i;
            }
        }
        longest.assign(1u << E, 0);
        lengths.assign(1u << E, 0);
        for (uint32_t m = 1; m < (1u << E); ++m) scan_cycles(m);
    }

    int digit(int code, int e) const { return (code / (int)pow3[e]) % 3; }

    void scan_cycles(uint32_t m) {
        // enumerate simple cycles whose minimum vertex is the DFS root
        for (int s = 0; s < n; ++s) dfs_cycles(m, s, s, 1u << s, 1);
    }

    void dfs_cycles(uint32_t m, int root, int cur, uint32_t vis, int len) {
        for (int v = root; v < n; ++v) {
            if (v == cur) continue;
            if (!(m >> eidx[cur][v] & 1)) continue;
            if (v == root) {
                if (len >= 3) {
                    longest[m] = std::max<uint8_t>(longest[m], (uint8_t)len);
                    lengths[m] |= (uint8_t)(1u << len);
                }
                continue;
            }
            if (vis >> v & 1) continue;
            dfs_cycles(m, root, v, vis | (1u << v), len + 1);
        }
    }

    // one simple cycle satisfying pred(length), as a vertex list
    std::vector<Vertex> extract_cycle(uint32_t m, int want_len) const {
        for (int s = 0; s < n; ++s) {
            std::vector<Vertex> path{(Vertex)s};
            if (extract_dfs(m, s, s, 1u << s, want_len, path)) return path;
        }
        return {};
    }

    bool extract_dfs(uint32_t m, int root, int cur, uint32_t vis, int want,
                     std::vector<Vertex>& path) const {
        for (int v = root; v < n; ++v) {
            if (v == cur) continue;
            if (!(m >> eidx[cur][v] & 1)) continue;
            if (v == root) {
                if ((int)path.size() == want) return true;
                continue;
            }
            if (vis >> v & 1) continue;
            path.push_back(v);
            if (extract_dfs(m, root, v, vis | (1u << v), want, path)) return true;
            path.pop_back();
        }
        return false;
    }
};

struct Solver {
    const SolveQuery q;
    Tables tb;
    std::vector<uint16_t> dist; // per state; INF = Breaker win

    explicit Solver(const SolveQuery& q_) : q(q_), tb(q_.n) {
        if (q.n < 3 || q.b < 0) throw InvalidConfig("bad solve query");
        if (q.start_vertex < 0 || q.start_vertex >= q.n)
            throw InvalidConfig("bad start vertex");
    }

    bool target_mask(uint16_t wm) const {
        if (q.target == SolveQuery::Target::CycleAtLeast)
            return tb.longest[wm] >= q.target_param;
        return (tb.lengths[wm] >> q.target_param) & 1;
    }

    int sid(int code, int pos, int turn) const {
        return (code * tb.n + pos) * 2 + turn; // turn 0 = Walker to move
    }

    // all breaker claims = subsets of free edges of size min(b, |free|)
    template <typename F>
    void for_each_claim(int code, F&& f) const {
        uint16_t fm = tb.fmask[code];
        int free[15], nf = 0;
        for (int e = 0; e < tb.E; ++e)
            if (fm >> e & 1) free[nf++] = e;
        int k = std::min(q.b, nf);
        int pick[15];
        enum_subsets(code, free, nf, k, 0, 0, pick, f);
    }

    template <typename F>
    void enum_subsets(int code, const int* free, int nf, int k, int start,
                      int depth, int* pick, F&& f) const {
        if (depth == k) {
            int c = code;
            for (int i = 0; i < k; ++i) c += 2 * (int)tb.pow3[pick[i]];
            f(c, pick, k);
            return;
        }
        for (int i = start; i <= nf - (k - depth); ++i) {
            pick[depth] = free[i];
            enum_subsets(code, free, nf, k, i + 1, depth + 1, pick, f);
        }
    }

    void run() {
        const int nstates = tb.ncodes * tb.n * 2;
        dist.assign(nstates, INF);
        for (int code = 0; code < tb.ncodes; ++code)
            if (target_mask(tb.wmask[code]))
                for (int p = 0; p < tb.n; ++p)
                    for (int t = 0; t < 2; ++t) dist[sid(code, p, t)] = 0;

        bool changed = true;
        while (changed) {
            changed = false;
            for (int code = 0; code < tb.ncodes; ++code) {
                if (target_mask(tb.wmask[code])) continue;
                for (int p = 0; p < tb.n; ++p) {
                    // Walker to move: fastest win
                    {
                        int s = sid(code, p, 0);
                        uint16_t best = INF;
                        for (int v = 0; v < tb.n; ++v) {
                            if (v == p) continue;
                            int e = tb.eidx[p][v];
                            int d = tb.digit(code, e);
                            if (d == 2) continue;
                            int c2 = d == 0 ? code + (int)tb.pow3[e] : code;
                            uint16_t sd = dist[sid(c2, v, 1)];
                            if (sd != INF && sd + 1 < best) best = (uint16_t)(sd + 1);
                        }
                        if (best < dist[s]) { dist[s] = best; changed = true; }
                    }
                    // Breaker to move: maximal resistance, wins via INF
                    {
                        int s = sid(code, p, 1);
                        uint16_t worst = 0;
                        bool all = true;
                        for_each_claim(code, [&](int c2, const int*, int) {
                            uint16_t sd = dist[sid(c2, p, 0)];
                            if (sd == INF) all = false;
                            else worst = std::max(worst, sd);
                        });
                        if (all && worst + 1 < dist[s]) {
                            dist[s] = (uint16_t)(worst + 1);
                            changed = true;
                        }
                    }
                }
            }
        }
    }

    SolveResult result() {
        run();
        int code0 = 0;
        int turn0 = q.first_mover == Player::Walker ? 0 : 1;
        int s0 = sid(code0, q.start_vertex, turn0);

        SolveResult res;
        res.principal_variation.config = pv_config();
        if (dist[s0] == INF) {
            res.winner = Player::Breaker;
            return res;
        }
        res.winner = Player::Walker;
        build_pv(res.principal_variation, code0, q.start_vertex, turn0);
        return res;
    }

    GameConfig pv_config() const {
        GameConfig cfg;
        cfg.n = q.n;
        cfg.b = q.b;
        cfg.first_mover = q.first_mover;
        cfg.start_vertex = q.start_vertex;
        cfg.rng_seed = 0;
        return cfg;
    }

    void build_pv(Transcript& t, int code, int pos, int turn) {
        Game g(pv_config());
        while (!target_mask(tb.wmask[code])) {
            if (turn == 0) {
                int beste = -1, bestv = -1, bestc = -1;
                uint16_t best = INF;
                for (int v = 0; v < tb.n; ++v) {
                    if (v == pos) continue;
                    int e = tb.eidx[pos][v];
                    int d = tb.digit(code, e);
                    if (d == 2) continue;
                    int c2 = d == 0 ? code + (int)tb.pow3[e] : code;
                    uint16_t sd = dist[sid(c2, v, 1)];
                    if (sd < best) { best = sd; beste = e; bestv = v; bestc = c2; }
                }
                (void)beste;
                g.walker_step(bestv);
                t.add_move(g.move_log().back());
                code = bestc;
                pos = bestv;
                turn = 1;
            } else {
                uint16_t worst = 0;
                int bestc = -1;
                std::vector<EdgeId> claim;
                for_each_claim(code, [&](int c2, const int* pick, int k) {
                    uint16_t sd = dist[sid(c2, pos, 0)];
                    if (bestc < 0 || sd > worst) {
                        worst = sd;
                        bestc = c2;
                        claim.clear();
                        for (int i = 0; i < k; ++i)
                            claim.push_back(EdgeId::make(tb.ends[pick[i]][0],
                                                         tb.ends[pick[i]][1]));
                    }
                });
                g.breaker_claim(claim);
                t.add_move(g.move_log().back());
                code = bestc;
                turn = 0;
            }
        }
        uint16_t wm = tb.wmask[code];
        int len = q.target == SolveQuery::Target::CycleAtLeast ? tb.longest[wm]
                                                               : q.target_param;
        auto cyc = tb.extract_cycle(wm, len);
        if (!cyc.empty())
            t.certificate = Certificate{Certificate::Kind::Cycle, cyc};
    }
};

} // namespace

SolveResult solve(const SolveQuery& q) {
    Solver s(q);
    return s.result();
}

int value_longest_cycle(int n, int b, Player first_mover, Vertex start) {
    int best = 0;
    for (int L = 3; L <= n; ++L) {
        SolveQuery q;
        q.n = n;
        q.b = b;
        q.first_mover = first_mover;
        q.start_vertex = start;
        q.target = SolveQuery::Target::CycleAtLeast;
        q.target_param = L;
        if (solve(q).winner == Player::Walker) best = L;
        else break; // monotone in L
    }
    return best;
}

// ---- reachability against the pinned prevention strategy -----------------

namespace {

struct PinnedBreaker {
    int8_t w1 = -1, w2 = -1;
    uint8_t phase = 0; // 0 = blocking w1, 1 = blocking w2

    bool operator==(const PinnedBreaker&) const = default;
};

struct PinnedSearch {
    Tables tb;
    int n, b;
    Vertex v0;

    PinnedSearch(int n_, int b_, Vertex start) : tb(n_), n(n_), b(b_), v0(start) {}

    uint32_t visited_mask(int code, int pos) const {
        uint32_t vis = (1u << pos) | (1u << v0);
        uint16_t wm = tb.wmask[code];
        for (int e = 0; e < tb.E; ++e)
            if (wm >> e & 1) vis |= (1u << tb.ends[e][0]) | (1u << tb.ends[e][1]);
        return vis;
    }

    // mirrors PreventLongCycleBreaker::claim over the packed state
    int apply_claim(int code, int pos, PinnedBreaker& mem) const {
        uint32_t vis = visited_mask(code, pos);
        int nf = std::popcount((uint32_t)tb.fmask[code]);
        int want = std::min(b, nf);
        int claimed = 0;
        uint32_t taken = 0; // edge indices claimed this turn

        auto take = [&](int a, int c) {
            if (a == c || claimed >= want) return;
            int e = tb.eidx[a][c];
            if (tb.digit(code, e) != 0 || (taken >> e & 1)) return;
            taken |= 1u << e;
            ++claimed;
        };

        if (mem.w1 < 0) {
            for (int v = 0; v < n; ++v)
                if (!(vis >> v & 1)) { mem.w1 = (int8_t)v; break; }
            if (mem.w1 >= 0) take(v0, mem.w1);
        }
        if (mem.phase == 0 && std::popcount(vis) >= n - 2) {
            mem.phase = 1;
            for (int v = 0; v < n; ++v)
                if (!(vis >> v & 1) && v != mem.w1) { mem.w2 = (int8_t)v; break; }
            if (mem.w2 < 0) mem.w2 = mem.w1;
        }
        take(mem.phase == 0 ? mem.w1 : mem.w2, pos);
        for (int e = 0; e < tb.E && claimed < want; ++e)
            if (tb.digit(code, e) == 0 && !(taken >> e & 1)) {
                taken |= 1u << e;
                ++claimed;
            }

        for (int e = 0; e < tb.E; ++e)
            if (taken >> e & 1) code += 2 * (int)tb.pow3[e];
        return code;
    }

    uint32_t key(int code, int pos, const PinnedBreaker& m) const {
        return (uint32_t)code | (uint32_t)pos << 17 | (uint32_t)(m.w1 + 1) << 20 |
               (uint32_t)(m.w2 + 1) << 23 | (uint32_t)m.phase << 26;
    }

    int run(Player first) {
        int best = 0;
        struct Node {
            int code, pos;
            PinnedBreaker mem;
        };
        Node start{0, v0, {}};
        if (first == Player::Breaker) start.code = apply_claim(0, v0, start.mem);

        std::unordered_set<uint32_t> seen;
        std::vector<Node> stack{start};
        seen.insert(key(start.code, start.pos, start.mem));
        while (!stack.empty()) {
            Node nd = stack.back();
            stack.pop_back();
            best = std::max(best, (int)tb.longest[tb.wmask[nd.code]]);
            for (int v = 0; v < n; ++v) {
                if (v == nd.pos) continue;
                int e = tb.eidx[nd.pos][v];
                int d = tb.digit(nd.code, e);
                if (d == 2) continue;
                Node nx = nd;
                nx.code = d == 0 ? nd.code + (int)tb.pow3[e] : nd.code;
                nx.pos = v;
                best = std::max(best, (int)tb.longest[tb.wmask[nx.code]]);
                nx.code = apply_claim(nx.code, nx.pos, nx.mem);
                if (seen.insert(key(nx.code, nx.pos, nx.mem)).second)
                    stack.push_back(nx);
            }
        }
        return best;
    }
};

} // namespace

int max_cycle_vs_prevent(int n, int b, Player first_mover, Vertex start) {
    if (n > 5) throw BudgetExceeded("pinned-breaker search limited to n <= 5");
    PinnedSearch s(n, b, start);
    return s.run(first_mover);
}

} // namespace wbl
