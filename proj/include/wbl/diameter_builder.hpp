#pragma once

#include <deque>
#include <optional>
#include <vector>

#include "wbl/profile.hpp"
#include "wbl/strategy.hpp"

namespace wbl {

struct InsufficientFreeNeighbors : GameError { using GameError::GameError; };
struct DegreeAssertFailed : GameError { using GameError::GameError; };
struct NoEligibleCenter : GameError { using GameError::GameError; };

// Derived quantities of the biased tree-building strategy.
struct BuilderParams {
    int n = 0, b = 1;
    double r = 0;   // ln n / ln(n / (div1 * b)), clamped so floor(r) >= 1
    int floor_r = 1;
    double c1 = 0;  // 1 / (2 floor(r) + 2)
    int c2 = 0;     // 2 floor(r) + 2
    int s1 = 0;     // phase-1 star size, ceil(n / (div1 * b))
    int s2 = 0;     // later star size,   ceil(n / (div2 * b))
    int tree_target = 0;     // floor(c1 * n)
    int stage2_exit = 0;     // ceil(mult * c2 * b)
    int stage3_stop = 0;     // ceil(mult * b)
    int diameter_bound = 0;  // 2 floor(r) + 6
};

BuilderParams make_builder_params(int n, int b, const ConstantsProfile& prof);

// Star attachment as a standalone drill: alternating out/return moves from
// `center` into untouched vertices, Breaker replying in between. Returns
// the number of Walker moves used (2*size - 1 for size >= 1).
int attach_star(Game& g, BreakerStrategy& breaker, Vertex center, int size);

struct TreeReport {
    int vertices = 0;
    int edges = 0;
    int diameter = 0;
    int rounds = 0;
    int depth = 0;
    int b = 0;
    double r = 0;

    std::string to_json() const;
};

// Walker strategy: Stage I leaf-star phases, Stage II absorption of the
// leftover vertex set, Stage III high-free-degree centers, yielding a
// spanning-but-400b tree of diameter <= 2 floor(r) + 6.
class PropTreeWalker : public WalkerStrategy {
public:
    PropTreeWalker(const ConstantsProfile& prof) : prof_(prof) {}

    enum class Stage : uint8_t { I, II, III, Done };

    void begin(const Game& g) override;
    std::optional<Vertex> next_step(const Game& g) override;

    Stage stage() const { return stage_; }
    const BuilderParams& params() const { return params_; }
    const std::vector<Vertex>& parent() const { return parent_; }
    const std::vector<int>& depth() const { return depth_; }
    int tree_size() const { return tree_count_; }
    int star_attachments() const { return star_count_; }

    TreeReport report(const Game& g) const;

private:
    void controller(const Game& g);
    void plan_walk(const Game& g, Vertex to);
    void add_leaf(Vertex leaf, Vertex center);
    bool star_pick(const Game& g, Vertex& out); // next leaf for active star
    void stage1_next(const Game& g);
    void stage2_next(const Game& g);
    void stage3_next(const Game& g);

    ConstantsProfile prof_;
    BuilderParams params_;
    Stage stage_ = Stage::I;

    std::vector<Vertex> parent_;
    std::vector<int> depth_;
    VertexSet in_tree_{1};
    VertexSet outside_{1}; // complement of in_tree_
    int tree_count_ = 0;
    int star_count_ = 0;

    std::deque<Vertex> walkq_;
    bool star_active_ = false;
    Vertex star_center_ = -1;
    int star_left_ = 0;      // remaining leaves; -1 = greedy mode
    bool star_into_Vi_ = false;

    // Stage I
    int phase_ = 1;
    std::vector<Vertex> leaves_prev_, leaves_cur_;
    std::vector<char> was_center_;
    int stars_this_phase_ = 0;
    bool truncated_ = false;
    bool phase_done_after_star_ = false;

    // Stage II / III
    VertexSet t1_{1}, t2_{1};
    int iter_ = 0;
    int prev_set_size_ = -1;
    Vertex z_prev_ = -1;
    bool z0_done_ = false;
};

struct BuildResult {
    MatchResult match;
    TreeReport report;
};

// Full Proposition run vs the given Breaker; asserts the three bounds
// under the paper profile.
BuildResult build_low_diameter_tree(const GameConfig& cfg,
                                    BreakerStrategy& breaker);

} // namespace wbl
