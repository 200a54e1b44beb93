#include "wbl/diameter_builder.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace wbl {

BuilderParams make_builder_params(int n, int b, const ConstantsProfile& prof) {
    if (b < 1) throw InvalidConfig("tree builder needs b >= 1");
    BuilderParams p;
    p.n = n;
    p.b = b;
    double ratio = (double)n / (prof.star_div1 * b);
    if (ratio <= 1.0)
        throw InvalidConfig("bias too large for tree builder: n/(div*b) <= 1");
    p.r = std::log((double)n) / std::log(ratio);
    p.floor_r = std::max(1, (int)std::floor(p.r));
    p.c2 = 2 * p.floor_r + 2;
    p.c1 = 1.0 / p.c2;
    p.s1 = (int)std::ceil((double)n / (prof.star_div1 * b));
    p.s2 = (int)std::ceil((double)n / (prof.star_div2 * b));
    p.tree_target = (int)std::floor(p.c1 * n);
    p.stage2_exit = (int)std::ceil(prof.stage2_exit_mult * p.c2 * b);
    p.stage3_stop = (int)std::ceil(prof.stage3_stop_mult * b);
    p.diameter_bound = 2 * p.floor_r + 6;
    if (p.tree_target < p.s1 + 1)
        throw InvalidConfig("tree builder: c1*n smaller than first star");
    return p;
}

// ---- standalone star drill ----------------------------------------------

int attach_star(Game& g, BreakerStrategy& breaker, Vertex center, int size) {
    if (size < 1) throw InvalidConfig("attach_star: size must be >= 1");
    if (g.position() != center)
        throw PreconditionFailed("attach_star: walker not at center");
    const Board& bd = g.board();
    const int n = bd.n();
    const int need = (2 * g.config().b + 1) * size;
    int avail = 0;
    for (Vertex v = 0; v < n && avail < need; ++v)
        if (!g.visited().test(v) && bd.is_free(center, v)) ++avail;
    if (avail < need)
        throw InsufficientFreeNeighbors("attach_star: center " +
                                        std::to_string(center) + " has " +
                                        std::to_string(avail) + " < " +
                                        std::to_string(need));
    int moves = 0;
    auto breaker_reply = [&] {
        auto edges = breaker.claim(g);
        g.breaker_claim(edges);
    };
    for (int i = 0; i < size; ++i) {
        Vertex w = -1;
        for (Vertex v = 0; v < n; ++v)
            if (!g.visited().test(v) && bd.is_free(center, v)) { w = v; break; }
        if (w < 0) throw StrategyStuck("attach_star: starved mid-star");
        g.walker_step(w);
        ++moves;
        breaker_reply();
        if (i + 1 < size) {
            g.walker_step(center);
            ++moves;
            breaker_reply();
        }
    }
    return moves;
}

// ---- strategy ------------------------------------------------------------

void PropTreeWalker::begin(const Game& g) {
    const int n = g.board().n();
    params_ = make_builder_params(n, g.config().b, prof_);
    parent_.assign(n, -1);
    depth_.assign(n, 0);
    in_tree_ = VertexSet(n);
    outside_ = VertexSet(n);
    outside_.fill();
    was_center_.assign(n, 0);
    Vertex root = g.started() ? g.position() : g.config().start_vertex;
    in_tree_.set(root);
    outside_.reset(root);
    tree_count_ = 1;
}

void PropTreeWalker::add_leaf(Vertex leaf, Vertex center) {
    parent_[leaf] = center;
    depth_[leaf] = depth_[center] + 1;
    in_tree_.set(leaf);
    outside_.reset(leaf);
    ++tree_count_;
    ++star_count_;
    if (stage_ == Stage::I) leaves_cur_.push_back(leaf);
}

bool PropTreeWalker::star_pick(const Game& g, Vertex& out) {
    const Board& bd = g.board();
    for (int v = outside_.next(0); v >= 0; v = outside_.next(v + 1))
        if (bd.is_free(star_center_, v)) { out = v; return true; }
    return false;
}

void PropTreeWalker::plan_walk(const Game& g, Vertex to) {
    Vertex a = g.position(), c = to;
    std::vector<Vertex> down;
    std::vector<Vertex> up;
    while (depth_[a] > depth_[c]) { a = parent_[a]; up.push_back(a); }
    while (depth_[c] > depth_[a]) { down.push_back(c); c = parent_[c]; }
    while (a != c) {
        a = parent_[a];
        up.push_back(a);
        down.push_back(c);
        c = parent_[c];
    }
    for (Vertex v : up) walkq_.push_back(v);
    for (auto it = down.rbegin(); it != down.rend(); ++it)
        walkq_.push_back(*it);
    const int limit = stage_ == Stage::I ? 2 * phase_ : params_.c2 + 2;
    if ((int)walkq_.size() > limit)
        throw StrategyFault("tree walk longer than depth bound allows");
}

std::optional<Vertex> PropTreeWalker::next_step(const Game& g) {
    for (;;) {
        if (!walkq_.empty()) {
            Vertex v = walkq_.front();
            walkq_.pop_front();
            return v;
        }
        if (star_active_) {
            Vertex pos = g.position();
            if (pos != star_center_) {
                // on a freshly attached leaf
                if (star_left_ == 0) {
                    star_active_ = false; // sized star, no return trip
                    continue;
                }
                return star_center_;
            }
            Vertex w = -1;
            bool have = star_pick(g, w);
            if (star_left_ < 0) { // greedy: run until no free edge out
                if (!have) { star_active_ = false; continue; }
            } else if (star_left_ == 0) {
                star_active_ = false; // returned after the last leaf
                continue;
            } else if (!have) {
                throw StrategyStuck("star starved despite precondition");
            }
            add_leaf(w, star_center_);
            if (star_left_ > 0) {
                --star_left_;
                // stage III stars walk back so the next z-step starts here
                if (star_left_ == 0 && stage_ != Stage::III)
                    star_active_ = false;
            }
            return w;
        }
        controller(g);
        if (stage_ == Stage::Done) return std::nullopt;
    }
}

void PropTreeWalker::controller(const Game& g) {
    switch (stage_) {
        case Stage::I: stage1_next(g); break;
        case Stage::II: stage2_next(g); break;
        case Stage::III: stage3_next(g); break;
        case Stage::Done: break;
    }
}

void PropTreeWalker::stage1_next(const Game& g) {
    const Board& bd = g.board();
    const int n = bd.n();
    const int b = g.config().b;

    auto phase_round_check = [&](int j) {
        double cap = 5.0 * std::pow((double)n / (prof_.star_div1 * b), j);
        if ((double)g.round() > cap + 1e-9) {
            if (prof_.hard_asserts)
                throw DegreeAssertFailed("phase " + std::to_string(j) +
                                         " used " + std::to_string(g.round()) +
                                         " rounds, cap " + std::to_string(cap));
            emit("WARN phase rounds over cap");
        }
    };

    if (truncated_ || tree_count_ >= params_.tree_target) {
        t1_ = in_tree_;
        stage_ = Stage::II;
        prev_set_size_ = -1;
        iter_ = 0;
        emit("PROP STAGE II tree=" + std::to_string(tree_count_) +
             " rounds=" + std::to_string(g.round()));
        return;
    }

    if (tree_count_ == 1) { // phase 1: one star at the root
        int size = std::min(params_.s1, params_.tree_target - tree_count_);
        star_center_ = g.position();
        star_left_ = size;
        star_active_ = true;
        was_center_[star_center_] = 1;
        phase_done_after_star_ = true;
        return;
    }

    if (phase_done_after_star_) {
        phase_done_after_star_ = false;
        phase_round_check(phase_);
        leaves_prev_ = std::move(leaves_cur_);
        leaves_cur_.clear();
        phase_ = 2;
        stars_this_phase_ = 0;
    }

    const int limit = (int)leaves_prev_.size() / 2;
    if (stars_this_phase_ >= limit) {
        if (stars_this_phase_ > 0) phase_round_check(phase_);
        leaves_prev_ = std::move(leaves_cur_);
        leaves_cur_.clear();
        ++phase_;
        stars_this_phase_ = 0;
        if (leaves_prev_.empty())
            throw NoEligibleCenter("stage I ran out of leaves before c1*n");
        return;
    }

    Vertex center = -1;
    int best = -1;
    for (Vertex v : leaves_prev_) {
        if (was_center_[v]) continue;
        int d = bd.dB(v);
        if (center < 0 || d < best || (d == best && v < center)) {
            center = v;
            best = d;
        }
    }
    if (center < 0)
        throw NoEligibleCenter("stage I phase " + std::to_string(phase_) +
                               ": no unused leaf");
    if ((double)best > prof_.stage1_dB_cap * n) {
        if (prof_.hard_asserts)
            throw DegreeAssertFailed("stage I center " + std::to_string(center) +
                                     " has d_B " + std::to_string(best));
        emit("WARN stage I center over degree cap");
    }

    int size = std::min(params_.s2, params_.tree_target - tree_count_);
    if (size < params_.s2) truncated_ = true;

    const int need = (2 * b + 1) * size;
    int avail = 0;
    for (int v = outside_.next(0); v >= 0 && avail < need;
         v = outside_.next(v + 1))
        if (bd.is_free(center, v)) ++avail;
    if (avail < need)
        throw InsufficientFreeNeighbors(
            "stage I center " + std::to_string(center) + " has " +
            std::to_string(avail) + " free untouched neighbors, needs " +
            std::to_string(need));

    plan_walk(g, center);
    star_center_ = center;
    star_left_ = size;
    star_active_ = true;
    was_center_[center] = 1;
    ++stars_this_phase_;
}

void PropTreeWalker::stage2_next(const Game& g) {
    const Board& bd = g.board();
    const int b = g.config().b;
    const int sz = outside_.count();

    if (prev_set_size_ >= 0) {
        double cap = (1.0 - 1.0 / (4.0 * b + 2.0)) * prev_set_size_;
        if ((double)sz > cap + 1e-9) {
            if (prof_.hard_asserts)
                throw DegreeAssertFailed("stage II contraction: |V| " +
                                         std::to_string(sz) + " > " +
                                         std::to_string(cap));
            emit("WARN stage II contraction missed");
        }
    }

    if (sz <= params_.stage2_exit) {
        t2_ = in_tree_;
        stage_ = Stage::III;
        z0_done_ = false;
        iter_ = 0;
        emit("PROP STAGE III tree=" + std::to_string(tree_count_) +
             " rounds=" + std::to_string(g.round()));
        return;
    }
    if (++iter_ > bd.n())
        throw NoEligibleCenter("stage II made no progress");

    Vertex z = -1;
    int best = -1;
    for (int v = t1_.next(0); v >= 0; v = t1_.next(v + 1)) {
        int d = bd.dB_in(v, outside_);
        if (d >= sz) continue; // d_F(v, V_i) == 0
        if (z < 0 || d < best) {
            z = v;
            best = d;
        }
    }
    if (z < 0) throw NoEligibleCenter("stage II: no center with free edge into V_i");
    if ((double)best > prof_.stage2_dB_mult * params_.c2 * b) {
        if (prof_.hard_asserts)
            throw DegreeAssertFailed("stage II center d_B(z,V) = " +
                                     std::to_string(best));
        emit("WARN stage II center over degree cap");
    }

    plan_walk(g, z);
    star_center_ = z;
    star_left_ = -1; // greedy
    star_active_ = true;
    prev_set_size_ = sz;
}

void PropTreeWalker::stage3_next(const Game& g) {
    const Board& bd = g.board();
    const int n = bd.n();
    const int b = g.config().b;
    const int sz = outside_.count();

    if (sz <= params_.stage3_stop) {
        emit("PROP DONE tree=" + std::to_string(tree_count_) +
             " rounds=" + std::to_string(g.round()));
        stage_ = Stage::Done;
        return;
    }
    if (++iter_ > n / 4 + 4)
        throw NoEligibleCenter("stage III did not converge");

    if (!z0_done_) {
        Vertex z0 = -1;
        for (int v = t2_.next(0); v >= 0; v = t2_.next(v + 1))
            if ((double)bd.dF(v) >= prof_.stage3_z0_frac * n) { z0 = v; break; }
        if (z0 < 0) throw NoEligibleCenter("stage III: no z_0 with high d_F");
        plan_walk(g, z0);
        z_prev_ = z0;
        z0_done_ = true;
        return;
    }

    Vertex z = -1;
    for (int v = t2_.next(0); v >= 0; v = t2_.next(v + 1)) {
        if (v == z_prev_ || !bd.is_free(z_prev_, v)) continue;
        if ((double)bd.dF(v) < prof_.stage3_zi_frac * n) continue;
        if ((double)bd.dB(v) > prof_.stage3_dB_mult * b) continue;
        z = v;
        break;
    }
    if (z < 0) throw NoEligibleCenter("stage III: no eligible z_i");

    int size = (sz - bd.dB_in(z, outside_)) / (2 * b + 1) - 1;
    size = std::max(size, 0);
    walkq_.push_back(z); // z_{i-1} z_i is a free edge, claimed by this step
    z_prev_ = z;
    if (size > 0) {
        star_center_ = z;
        star_left_ = size;
        star_active_ = true;
    }
}

TreeReport PropTreeWalker::report(const Game& g) const {
    TreeReport rep;
    rep.vertices = tree_count_;
    rep.edges = tree_count_ > 0 ? tree_count_ - 1 : 0;
    rep.rounds = g.round();
    rep.b = g.config().b;
    rep.r = params_.r;
    const int n = (int)parent_.size();
    std::vector<std::vector<Vertex>> adj(n);
    Vertex root = -1;
    for (Vertex v = 0; v < n; ++v) {
        if (!in_tree_.test(v)) continue;
        if (parent_[v] < 0) root = v;
        else {
            adj[v].push_back(parent_[v]);
            adj[parent_[v]].push_back(v);
        }
        rep.depth = std::max(rep.depth, depth_[v]);
    }
    if (root < 0 || tree_count_ <= 1) return rep;
    auto bfs_far = [&](Vertex s, int& dist) {
        std::vector<int> d(n, -1);
        std::vector<Vertex> q{s};
        d[s] = 0;
        Vertex far = s;
        for (size_t i = 0; i < q.size(); ++i) {
            Vertex u = q[i];
            if (d[u] > d[far]) far = u;
            for (Vertex w : adj[u])
                if (d[w] < 0) {
                    d[w] = d[u] + 1;
                    q.push_back(w);
                }
        }
        dist = d[far];
        return far;
    };
    int dist = 0;
    Vertex a = bfs_far(root, dist);
    bfs_far(a, dist);
    rep.diameter = dist;
    return rep;
}

std::string TreeReport::to_json() const {
    nlohmann::json j{{"vertices", vertices}, {"edges", edges},
                     {"diameter", diameter}, {"rounds", rounds},
                     {"depth", depth},       {"b", b},
                     {"r", r}};
    return j.dump();
}

BuildResult build_low_diameter_tree(const GameConfig& cfg,
                                    BreakerStrategy& breaker) {
    ConstantsProfile prof = make_profile(cfg.profile, cfg.n);
    PropTreeWalker walker(prof);
    BuildResult out;
    out.match = run_match(cfg, walker, breaker);
    out.report = walker.report(*out.match.final_state);
    if (prof.hard_asserts) {
        const auto& p = walker.params();
        if (out.report.vertices < cfg.n - p.stage3_stop)
            throw DegreeAssertFailed("tree too small: " +
                                     std::to_string(out.report.vertices));
        if (out.report.diameter > p.diameter_bound)
            throw DegreeAssertFailed("tree diameter " +
                                     std::to_string(out.report.diameter) +
                                     " over bound " +
                                     std::to_string(p.diameter_bound));
        if (out.report.rounds > 6 * cfg.n)
            throw DegreeAssertFailed("tree build used " +
                                     std::to_string(out.report.rounds) +
                                     " rounds");
    }
    return out;
}

} // namespace wbl
