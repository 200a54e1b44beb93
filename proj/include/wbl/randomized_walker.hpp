#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wbl/minbox.hpp"
#include "wbl/profile.hpp"
#include "wbl/strategy.hpp"

namespace wbl {

struct SelectionFailed : GameError { using GameError::GameError; };
struct NotRed : GameError { using GameError::GameError; };
struct NotAtRedVertex : GameError { using GameError::GameError; };

// Parameters of the randomized exposure strategy. Under the paper profile
// the theorem's constraints on epsilon, p and b are enforced; under the
// scaled profile violations are reported as warnings only.
struct RandConfig {
    int n = 0;             // |V*|, the universe the strategy plays on
    int b = 1;
    double epsilon = 1e-6;
    double p = 0.01;
    int d = 4;             // all-pairs W_0 path length bound
    uint64_t seed = 1;
    std::string profile = "paper";

    // returns warnings; throws InvalidConfig for hard violations
    std::vector<std::string> validate() const;
};

// Next-hop routing over Walker's graph at strategy start; reuse-only moves.
class W0Router {
public:
    W0Router() = default;
    // builds from the walker edges of `bd` restricted to visited vertices
    W0Router(const Board& bd, const VertexSet& w0_vertices);

    bool covers(Vertex v) const { return v >= 0 && idx_[v] >= 0; }
    int dist(Vertex from, Vertex to) const;
    Vertex next_hop(Vertex from, Vertex to) const; // first edge of a shortest path

private:
    std::vector<int32_t> idx_;      // global -> local, -1 if off W_0
    std::vector<Vertex> verts_;     // local -> global
    std::vector<int16_t> hop_;      // [to_local * m + from_local] = next local
    std::vector<int16_t> dist_;
    int m_ = 0;
};

struct PrecheckReport {
    bool ok = true;
    int min_free_degree = 0;
    int max_pair_dist = 0;
    std::vector<std::string> violations;
};

struct RunReport {
    uint64_t seed = 0;
    int n = 0;
    int b = 0;
    double p = 0;
    double epsilon = 0;
    int d = 0;
    int max_fII = 0;
    int min_dH = 0;
    double min_ratio = 0; // min over v with d_H > 0 of d_{W\W0}(v) / d_H(v)
    int64_t max_active_danger = 0;
    std::optional<bool> hamiltonian;
    std::optional<bool> has_Ck;

    std::string to_json() const;
};

// Exposure bookkeeping over the universe V*. Indices into the per-vertex
// arrays are local (position in `verts`).
class ExposureState {
public:
    ExposureState(const Game& g, std::vector<Vertex> universe,
                  const RandConfig& cfg);

    const std::vector<Vertex>& verts() const { return verts_; }
    int local(Vertex v) const { return idx_[v]; }
    int universe_size() const { return (int)verts_.size(); }

    MinBoxState& minbox() { return minbox_; }
    const W0Router& router() const { return router_; }

    std::optional<Vertex> red() const { return red_; }
    int rounds_red() const { return rounds_red_; }
    void tick_red() { ++rounds_red_; }

    bool exposed(Vertex u, Vertex v) const;
    bool in_H(Vertex u, Vertex v) const;
    int dH(Vertex v) const { return H_[idx_[v]].count(); }
    int dWnew(Vertex v) const { return d_new_[idx_[v]]; }
    int fI(Vertex v) const { return fI_[idx_[v]]; }
    int fII(Vertex v) const { return fII_[idx_[v]]; }
    int unexposed_at(Vertex v) const { return U_[idx_[v]].count(); }
    bool was_free_at_start(Vertex u, Vertex v) const;

    // strategy steps -------------------------------------------------------
    // marks red + maker move; nullopt = StageII signal
    std::optional<Vertex> select_exposure_vertex();

    enum class ExposeOutcome : uint8_t { TypeI, Claimed, TypeII };
    struct ExposeResult {
        ExposeOutcome outcome;
        Vertex target = -1; // sigma(k) for Claimed / TypeII
        int tosses = 0;
    };
    ExposeResult expose(Game& g, Rng& rng);

    void stage2_flush(Rng& rng);

    void note_new_walker_edge(Vertex u, Vertex v);
    void breaker_update(const std::vector<EdgeId>& edges);
    void clear_red() { red_.reset(); rounds_red_ = 0; }

private:
    void mark_exposed(int lu, int lv);

    std::vector<int32_t> idx_;
    std::vector<Vertex> verts_;
    std::vector<VertexSet> U_;   // unexposed neighbors, global bit indices
    std::vector<VertexSet> H_;   // coin successes
    std::vector<VertexSet> F0_;  // free at strategy start
    std::vector<int> fI_, fII_, d_new_;
    std::optional<Vertex> red_;
    int rounds_red_ = 0;
    MinBoxState minbox_;
    W0Router router_;
    double p_;
};

PrecheckReport check_preconditions(const Game& g,
                                   const std::vector<Vertex>& universe,
                                   const RandConfig& cfg);

struct RandResult {
    RunReport report;
    std::vector<EdgeId> new_edges; // W \ W_0 restricted to the universe
    std::vector<std::pair<Vertex, Vertex>> H_edges;
    // how often the in-play claims fired (throws under the paper profile,
    // counted and tolerated under scaled)
    int claim6_violations = 0; // red vertex not cleared within d+1 rounds
    int claim7_violations = 0; // box count bounds w_B < N, w_M < (1+2p)N
    int claim8_violations = 0; // active box with large Breaker degree
};

// Full game loop from the current position of `g` (W_0 = walker graph of g).
RandResult run_randomized_strategy(Game& g, const std::vector<Vertex>& universe,
                                   const RandConfig& cfg,
                                   BreakerStrategy& breaker);

// Greedy max-degree removal from V' until target_size remain; the degree is
// taken in (W u B)[set]. Highest index removed first on ties.
std::vector<Vertex> select_Vstar(const Board& bd,
                                 const std::vector<Vertex>& Vprime,
                                 int target_size, double max_degree);

struct ComposeConfig {
    int n = 0;
    int b = 1;           // theorem2; derived for theorem3
    double epsilon = 0.25;
    int k = 3;           // theorem3 cycle length
    double C = 1.0;      // theorem3 resilience constant (config input)
    double gamma = 0.4;  // theorem3 resilience constant (config input)
    uint64_t seed = 1;
    std::string profile = "scaled";
    std::string breaker = "random";
};

RunReport compose_theorem2(const ComposeConfig& cc);
RunReport compose_theorem3(const ComposeConfig& cc);

} // namespace wbl
