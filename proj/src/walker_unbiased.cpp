#include "wbl/walker_unbiased.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace wbl {

bool check_property_P(const PLedger& led, int x, int i) {
    return led.eB_U <= 3 * x + 4 + i &&
           led.dB_next_plus_eB_U <= 3 * x + 5 + i &&
           led.eB_ends_U <= 2 * (3 * x + 5 + i);
}

std::vector<Vertex> compute_Vt(const Board& bd, const VertexSet& untouched,
                               int threshold) {
    std::vector<Vertex> out;
    untouched.for_each([&](Vertex v) {
        if (bd.dB(v) < threshold) return; // toward-touched degree can't reach it
        if (bd.dB(v) - bd.dB_in(v, untouched) >= threshold) out.push_back(v);
    });
    return out;
}

// ---- cycle extension machine ---------------------------------------------

struct Thm1CycleWalker::Extend {
    ConstantsProfile prof;
    std::vector<Vertex> cycle;
    VertexSet cmask;
    int pos_idx;
    enum class Phase : uint8_t { Traverse, ToOutsider, Close, Done };
    Phase phase = Phase::Traverse;
    bool planned = false;
    int dir = 1, target_idx = -1;
    Vertex v1 = -1, v2 = -1, vc = -1;
    int w_idx = -1; // triple (w1,w2,w3) = cycle[w_idx, w_idx+1, w_idx+2]
    int rounds = 0;

    Extend(const ConstantsProfile& p, std::vector<Vertex> cyc, Vertex pos, int n)
        : prof(p), cycle(std::move(cyc)), cmask(n) {
        for (Vertex u : cycle) cmask.set(u);
        pos_idx = index_of(pos);
        if (pos_idx < 0) throw PreconditionFailed("position not on the cycle");
    }

    int index_of(Vertex u) const {
        auto it = std::find(cycle.begin(), cycle.end(), u);
        return it == cycle.end() ? -1 : (int)(it - cycle.begin());
    }

    int wrap(int i) const {
        int L = (int)cycle.size();
        return ((i % L) + L) % L;
    }

    Vertex next(const Game& g) {
        if (rounds >= prof.extend_round_budget)
            throw ExtensionFailed("extension exceeded its round budget");
        ++rounds;
        switch (phase) {
        case Phase::Traverse:
            return traverse(g);
        case Phase::ToOutsider:
            return to_outsider(g);
        case Phase::Close:
            return close(g);
        case Phase::Done:
            throw StrategyFault("extension machine already done");
        }
        throw StrategyFault("unreachable");
    }

    Vertex traverse(const Game& g) {
        const Board& bd = g.board();
        const int n = bd.n();
        const double thr = prof.extend_degree_frac * n;
        if (!planned) {
            // nearest low-Breaker-degree vertex, either direction
            const int L = (int)cycle.size();
            target_idx = -1;
            for (int d = 0; d < L && target_idx < 0; ++d) {
                if (bd.dB(cycle[wrap(pos_idx + d)]) <= thr) {
                    target_idx = wrap(pos_idx + d);
                    dir = 1;
                } else if (bd.dB(cycle[wrap(pos_idx - d)]) <= thr) {
                    target_idx = wrap(pos_idx - d);
                    dir = -1;
                }
            }
            if (target_idx < 0)
                throw ExtensionFailed("no vertex of low Breaker degree on cycle");
            planned = true;
        }
        if (pos_idx != target_idx) {
            pos_idx = wrap(pos_idx + dir);
            return cycle[pos_idx]; // reuse a cycle edge
        }

        // arrived at v; fix two outsiders of low degree toward the cycle
        const Vertex v = cycle[pos_idx];
        v1 = v2 = -1;
        for (Vertex y = 0; y < n; ++y) {
            if (cmask.test(y)) continue;
            if (bd.dB_in(y, cmask) > thr + 21) continue;
            if (v1 < 0) v1 = y;
            else { v2 = y; break; }
        }
        if (v2 < 0)
            throw ExtensionFailed("fewer than two usable outside vertices");

        // pigeonhole triple: consecutive w1,w2,w3 with w2 != v and all nine
        // edges toward {v,v1,v2} free of Breaker
        const Vertex trio[3] = {v, v1, v2};
        w_idx = -1;
        const int L = (int)cycle.size();
        for (int j = 0; j < L && w_idx < 0; ++j) {
            if (cycle[wrap(j + 1)] == v) continue;
            bool ok = true;
            for (int a = 0; a < 3 && ok; ++a)
                for (int c = 0; c < 3 && ok; ++c) {
                    Vertex wv = cycle[wrap(j + a)];
                    if (wv == trio[c]) continue;
                    if (bd.is_breaker(wv, trio[c])) ok = false;
                }
            if (ok) w_idx = j;
        }
        if (w_idx < 0) throw ExtensionFailed("no pigeonhole triple found");
        phase = Phase::ToOutsider;
        return cycle[wrap(w_idx + 1)]; // v -> w2
    }

    Vertex to_outsider(const Game& g) {
        const Board& bd = g.board();
        auto intact = [&](Vertex cand) {
            for (int a = 0; a < 3; ++a) {
                Vertex wv = cycle[wrap(w_idx + a)];
                if (wv != cand && bd.is_breaker(wv, cand)) return false;
            }
            return true;
        };
        if (intact(v1)) vc = v1;
        else if (intact(v2)) vc = v2;
        else throw ExtensionFailed("Breaker cut both outsiders from the triple");
        phase = Phase::Close;
        return vc; // w2 -> outsider
    }

    Vertex close(const Game& g) {
        const Board& bd = g.board();
        Vertex w1v = cycle[wrap(w_idx)], w3v = cycle[wrap(w_idx + 2)];
        Vertex closer;
        int between; // insert vc after this index
        if (!bd.is_breaker(vc, w1v) && bd.is_free(vc, w1v)) {
            closer = w1v;
            between = wrap(w_idx); // between w1 and w2
        } else if (bd.is_free(vc, w3v)) {
            closer = w3v;
            between = wrap(w_idx + 1); // between w2 and w3
        } else {
            throw ExtensionFailed("both closing edges gone");
        }
        if (between == (int)cycle.size() - 1) cycle.push_back(vc);
        else cycle.insert(cycle.begin() + between + 1, vc);
        cmask.set(vc);
        pos_idx = index_of(closer);
        phase = Phase::Done;
        return closer; // outsider -> w1 or w3, cycle grown by one
    }
};

namespace {

void check_extend_entry(const Game& g, const std::vector<Vertex>& cyc,
                        const ConstantsProfile& prof) {
    const int n = g.board().n();
    const int L = (int)cyc.size();
    if (L < n - prof.cycle_slack || L > n - 3)
        throw PreconditionFailed("cycle length outside [n-" +
                                 std::to_string(prof.cycle_slack) + ", n-3]");
    if (std::find(cyc.begin(), cyc.end(), g.position()) == cyc.end())
        throw PreconditionFailed("walker not positioned on the cycle");
    if (g.board().breaker_edges() > 2 * (int64_t)n)
        throw PreconditionFailed("Breaker holds more than 2n edges");
    VertexSet cmask(n);
    for (Vertex u : cyc) cmask.set(u);
    int heavy = 0;
    for (Vertex y = 0; y < n; ++y)
        if (!cmask.test(y) &&
            g.board().dB_in(y, cmask) >= prof.extend_degree_frac * n)
            ++heavy;
    if (heavy > 1)
        throw PreconditionFailed("two outside vertices of high degree toward cycle");
}

} // namespace

Certificate extend_cycle(Game& g, BreakerStrategy& breaker,
                         const Certificate& cycle, const ConstantsProfile& prof) {
    if (cycle.kind != Certificate::Kind::Cycle || !validate_certificate(g, cycle))
        throw PreconditionFailed("input is not a valid Walker cycle");
    check_extend_entry(g, cycle.vertices, prof);

    Thm1CycleWalker::Extend m(prof, cycle.vertices, g.position(), g.board().n());
    while (true) {
        Vertex t = m.next(g);
        g.walker_step(t);
        if (m.phase == Thm1CycleWalker::Extend::Phase::Done) break;
        auto edges = breaker.claim(g);
        g.breaker_claim(edges);
    }
    Certificate out{Certificate::Kind::Cycle, m.cycle};
    if (!validate_certificate(g, out))
        throw ExtensionFailed("splice produced an invalid cycle");
    return out;
}

// ---- five-stage strategy -------------------------------------------------

void Thm1CycleWalker::begin(const Game& g) {
    const GameConfig& cfg = g.config();
    if (cfg.b != 1)
        throw InvalidConfig("the unbiased cycle strategy requires b = 1");
    if (prof_.hard_asserts && cfg.n < prof_.n_floor)
        throw InvalidConfig("profile '" + prof_.name + "' needs n >= " +
                            std::to_string(prof_.n_floor));
    stage_ = Stage::I;
    path_.clear();
    U_ = VertexSet(cfg.n);
    U_.fill();
    u_count_ = cfg.n;
    eB_U_ = 0;
    ell_ = -1;
    x_ = 0;
    i_flag_ = 0;
    last_case_ = Last::None;
    iv_step_ = 0;
    cycle_.clear();
    stage5_rounds_ = 0;
    ext_.reset();
    log_seen_ = g.move_log().size();
    if (g.started()) {
        if (g.visited_count() > 1)
            throw InvalidConfig("strategy must start from a fresh walk");
        Vertex v0 = g.position();
        path_.push_back(v0);
        U_.reset(v0);
        --u_count_;
    }
}

void Thm1CycleWalker::process_breaker_log(const Game& g) {
    const auto& log = g.move_log();
    if (path_.empty() && g.started()) {
        // walker start happened after begin() (strategy-chosen start)
        Vertex v0 = g.visit_order().front();
        path_.push_back(v0);
        U_.reset(v0);
        --u_count_;
    }
    for (; log_seen_ < log.size(); ++log_seen_) {
        const Move& m = log[log_seen_];
        if (m.kind != Move::Kind::BreakerClaim) continue;
        for (const EdgeId& e : m.edges)
            if (U_.test(e.u) && U_.test(e.v)) ++eB_U_;
    }
}

void Thm1CycleWalker::step_to(const Game& g, Vertex w) {
    if (U_.test(w)) {
        eB_U_ -= g.board().dB_in(w, U_);
        U_.reset(w);
        --u_count_;
    }
}

PLedger Thm1CycleWalker::ledger(const Game& g) const {
    PLedger led;
    led.eB_U = eB_U_;
    led.dB_next_plus_eB_U = g.board().dB_in(g.position(), U_) + eB_U_;
    if (ell_ >= 1)
        led.eB_ends_U = g.board().dB_in(path_[1], U_) +
                        g.board().dB_in(path_[ell_], U_);
    return led;
}

std::optional<Vertex> Thm1CycleWalker::next_step(const Game& g) {
    process_breaker_log(g);
    switch (stage_) {
    case Stage::I:
        return stage1(g);
    case Stage::II:
        return stage2(g);
    case Stage::III:
        return stage3(g);
    case Stage::IV:
        return stage4(g);
    case Stage::V:
        return stage5(g);
    case Stage::Done:
        return std::nullopt;
    }
    return std::nullopt;
}

Vertex Thm1CycleWalker::stage1(const Game& g) {
    const Board& bd = g.board();
    // "all but at most 2 Breaker edges belong to E(v_0, V(P_t))" holds
    // right after Walker's move; at decision time Breaker has replied once
    // more, so allow one extra stray edge.
    if (prof_.hard_asserts && bd.breaker_edges() - bd.dB(path_[0]) > 3)
        throw StrategyStuck("Stage I invariant: stray Breaker edges");
    if (u_count_ <= prof_.stage_exit_untouched) {
        stage_ = Stage::III;
        emit("STAGE III t=" + std::to_string(g.round()));
        return stage3(g);
    }
    const Vertex vt = g.position();
    const Vertex v0 = path_[0];
    if (path_.size() >= 3 && vt != v0 && bd.is_free(vt, v0)) {
        // Case Ib: close the cycle through the start
        ell_ = (int)path_.size() - 1;
        stage_ = Stage::II;
        last_case_ = Last::None;
        emit("STAGE II t=" + std::to_string(g.round()) +
             " ell=" + std::to_string(ell_));
        return v0;
    }
    // Case Ic: lowest untouched vertex over a free edge
    for (Vertex w = U_.next(0); w >= 0; w = U_.next(w + 1))
        if (bd.is_free(vt, w)) {
            step_to(g, w);
            path_.push_back(w);
            return w;
        }
    throw StrategyStuck("Stage I case Ic: no free edge into the untouched set");
}

Vertex Thm1CycleWalker::stage2(const Game& g) {
    const Board& bd = g.board();
    const int n = bd.n();
    if (u_count_ <= prof_.stage_exit_untouched) {
        stage_ = Stage::IV;
        emit("STAGE IV t=" + std::to_string(g.round()));
        return stage4(g);
    }
    const Vertex vt = g.position();
    const int thr = prof_.vt_threshold(n);
    auto Vt = compute_Vt(bd, U_, thr);
    if (prof_.hard_asserts && (x_ > 11 || (int)Vt.size() > 11))
        throw StrategyStuck("Stage II bound: max{x,|V_t|} exceeded 11");

    auto finish = [&](Vertex w, Last c, int i) {
        step_to(g, w);
        path_.push_back(w);
        last_case_ = c;
        i_flag_ = i;
        PLedger led;
        led.eB_U = eB_U_;
        led.dB_next_plus_eB_U = bd.dB_in(w, U_) + eB_U_;
        led.eB_ends_U = bd.dB_in(path_[1], U_) + bd.dB_in(path_[ell_], U_);
        if (!check_property_P(led, x_, i)) {
            if (prof_.hard_asserts)
                throw StrategyStuck("property P violated after Stage II move");
            emit("WARN P violated t=" + std::to_string(g.round()));
        }
        return w;
    };

    if (Vt.empty()) { // Case IIb
        Vertex w = -1;
        auto lowest_free = [&](auto&& pred) {
            for (Vertex u = U_.next(0); u >= 0; u = U_.next(u + 1))
                if (bd.is_free(vt, u) && pred(u)) return u;
            return (Vertex)-1;
        };
        auto any = [](Vertex) { return true; };
        if (last_case_ == Last::IIc1) {
            w = lowest_free(any); // P[t,x,-1] held; any pick restores i=0
        } else if (last_case_ == Last::IIc2) {
            if (prof_.hard_asserts)
                throw StrategyStuck("Case IIb reached directly after IIc.2");
            w = lowest_free(any);
        } else {
            // the inequality Breaker just broke (if any) selects the repair
            int eBU = eB_U_;
            int dvt = bd.dB_in(vt, U_);
            int ends = ell_ >= 1 ? bd.dB_in(path_[1], U_) +
                                       bd.dB_in(path_[ell_], U_)
                                 : 0;
            if (eBU >= 3 * x_ + 5) {
                w = lowest_free([&](Vertex u) { return bd.dB_in(u, U_) >= 1; });
                if (w < 0)
                    throw StrategyStuck("IIb case 1: no vertex touching e_B(U)");
            } else if (dvt + eBU >= 3 * x_ + 6) {
                w = lowest_free(any);
            } else if (ends >= 2 * (3 * x_ + 5) + 1) {
                w = lowest_free([&](Vertex u) {
                    return bd.is_breaker(u, path_[1]) ||
                           bd.is_breaker(u, path_[ell_]);
                });
                if (w < 0)
                    throw StrategyStuck("IIb case 3: no vertex touching the ends");
            } else {
                w = lowest_free(any);
            }
        }
        if (w < 0) throw StrategyStuck("Case IIb: no free edge into U");
        return finish(w, Last::IIb, 0);
    }

    // Case IIc.1: free edge straight into V_t
    for (Vertex z : Vt)
        if (bd.is_free(vt, z)) {
            ++x_;
            return finish(z, Last::IIc1, -1);
        }
    // Case IIc.2: a vertex still fully open toward V_t
    for (Vertex u = U_.next(0); u >= 0; u = U_.next(u + 1)) {
        if (!bd.is_free(vt, u)) continue;
        bool open = true;
        for (Vertex z : Vt)
            if (z != u && !bd.is_free(u, z)) { open = false; break; }
        if (open) return finish(u, Last::IIc2, 1);
    }
    throw StrategyStuck("Case IIc.2: no vertex open toward V_t");
}

Vertex Thm1CycleWalker::stage3(const Game& g) {
    const Vertex vt = g.position();
    for (int i = 0; i <= 4 && i < (int)path_.size(); ++i) {
        Vertex vi = path_[i];
        if (vi != vt && g.board().is_free(vt, vi)) {
            cycle_.assign(path_.begin() + i, path_.end());
            stage_ = Stage::V;
            emit("STAGE V t=" + std::to_string(g.round()) +
                 " cycle=" + std::to_string(cycle_.size()));
            return vi;
        }
    }
    throw StrategyStuck("Stage III: no free edge v_t v_i with i <= 4");
}

Vertex Thm1CycleWalker::stage4(const Game& g) {
    const Board& bd = g.board();
    const Vertex vt = g.position();
    const Vertex v1 = path_[1], vl = path_[ell_];
    if (iv_step_ == 0) {
        for (Vertex w = U_.next(0); w >= 0; w = U_.next(w + 1))
            if (bd.is_free(w, v1) && bd.is_free(w, vl) && bd.is_free(w, vt)) {
                iv_w_ = w;
                iv_step_ = 1;
                step_to(g, w);
                return w;
            }
        throw StrategyStuck("Stage IV: no fresh vertex open to v_1, v_ell, v_t");
    }
    // second move: run the big cycle through v_1 or v_ell
    cycle_.clear();
    cycle_.push_back(iv_w_);
    for (int k = (int)path_.size() - 1; k >= ell_ + 1; --k)
        cycle_.push_back(path_[k]);
    cycle_.push_back(path_[0]);
    Vertex closer;
    if (bd.is_free(iv_w_, v1)) {
        for (int k = ell_; k >= 1; --k) cycle_.push_back(path_[k]);
        closer = v1;
    } else if (bd.is_free(iv_w_, vl)) {
        for (int k = 1; k <= ell_; ++k) cycle_.push_back(path_[k]);
        closer = vl;
    } else {
        throw StrategyStuck("Stage IV: both closing edges blocked");
    }
    stage_ = Stage::V;
    emit("STAGE V t=" + std::to_string(g.round()) +
         " cycle=" + std::to_string(cycle_.size()));
    return closer;
}

std::optional<Vertex> Thm1CycleWalker::stage5(const Game& g) {
    const int n = g.board().n();
    if ((int)cycle_.size() >= n - 2) {
        stage_ = Stage::Done;
        emit("DONE cycle=" + std::to_string(cycle_.size()));
        return std::nullopt;
    }
    if (stage5_rounds_ >= prof_.stage5_round_cap)
        throw StrategyStuck("Stage V exceeded its round cap");
    if (!ext_) {
        if (stage5_rounds_ == 0 && prof_.hard_asserts) {
            // entry observation: at most one heavy vertex outside C_0
            VertexSet cmask(n);
            for (Vertex u : cycle_) cmask.set(u);
            int heavy = 0;
            for (Vertex y = 0; y < n; ++y)
                if (!cmask.test(y) &&
                    g.board().dB_in(y, cmask) >=
                        prof_.vt_degree_frac * n + 50)
                    ++heavy;
            if (heavy > 1)
                throw StrategyStuck("Stage V entry: two heavy outside vertices");
        }
        if (prof_.hard_asserts)
            check_extend_entry(g, cycle_, prof_);
        ext_ = std::make_shared<Extend>(prof_, cycle_, g.position(), n);
    }
    Vertex t = ext_->next(g);
    ++stage5_rounds_;
    step_to(g, t);
    if (ext_->phase == Extend::Phase::Done) {
        cycle_ = ext_->cycle;
        ext_.reset();
        if ((int)cycle_.size() >= n - 2)
            emit("EXTENDED cycle=" + std::to_string(cycle_.size()));
    }
    return t;
}

std::optional<Certificate> Thm1CycleWalker::certificate() const {
    if (stage_ != Stage::Done) return std::nullopt;
    return Certificate{Certificate::Kind::Cycle, cycle_};
}

MatchResult play_unbiased_cycle_game(const GameConfig& cfg,
                                     BreakerStrategy& breaker) {
    Thm1CycleWalker walker(make_profile(cfg.profile, cfg.n));
    return run_match(cfg, walker, breaker);
}

} // namespace wbl
