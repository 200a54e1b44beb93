#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <vector>

#include "wbl/board.hpp"

namespace wbl {

struct OverBudget : GameError { using GameError::GameError; };
struct BoxFull : GameError { using GameError::GameError; };

// Auxiliary Maker-Breaker box game MinBox(n, D, alpha, b'). Maker claims one
// element per turn in a free active box of maximum danger; Breaker spreads up
// to b' elements. dang(S) = w_B(S) - b' * w_M(S).
class MinBoxState {
public:
    struct Box {
        int64_t size = 0;
        int64_t w_M = 0;
        int64_t w_B = 0;
    };

    MinBoxState(int n, int64_t D, double alpha, int bias);

    int n() const { return (int)boxes_.size(); }
    int bias() const { return bias_; }
    double alpha() const { return alpha_; }
    const Box& box(int i) const { return boxes_[i]; }

    int64_t dang(int i) const {
        return boxes_[i].w_B - (int64_t)bias_ * boxes_[i].w_M;
    }
    bool box_free(int i) const {
        return boxes_[i].w_M + boxes_[i].w_B < boxes_[i].size;
    }
    bool active(int i) const {
        return (double)boxes_[i].w_M < alpha_ * (double)boxes_[i].size;
    }

    // Claims one element in the lowest-index free active box of maximum
    // danger; nullopt if none exists.
    std::optional<int> maker_move_max_danger();

    // Direct Maker grant outside the max-danger rule (the exposure strategy
    // hands Maker elements on failures/successes). Grants up to `count`
    // free elements in box i; returns how many were taken.
    int64_t maker_grant(int i, int64_t count);

    // One Breaker turn: at most b' elements total across the boxes.
    void breaker_claim_elements(const std::vector<std::pair<int, int64_t>>& alloc);

    // Maximum danger over active boxes (free or frozen full), maintained
    // incrementally; this is the quantity the theorem bounds.
    int64_t max_active_danger();

    double danger_bound() const; // b' * (ln n + 1)

    int64_t total_maker() const { return total_M_; }
    int64_t total_breaker() const { return total_B_; }

private:
    void push(int i) { heap_.push({dang(i), -i}); }
    void clean();

    std::vector<Box> boxes_;
    double alpha_;
    int bias_;
    int64_t total_M_ = 0, total_B_ = 0;
    int64_t frozen_max_ = INT64_MIN; // full-but-active boxes, dang frozen
    // (dang, -index): max danger first, lowest index on ties
    std::priority_queue<std::pair<int64_t, int>> heap_;
};

struct FuzzReport {
    int schedules = 0;
    int64_t maker_moves = 0;
    int64_t violations = 0;
    int64_t max_danger = 0;
    double bound = 0;

    std::string to_json() const;
};

// Monte Carlo invariant drill: random adversary allocations (<= b' elements
// per Breaker turn), the bound checked after every Maker move.
FuzzReport minbox_fuzz(int n, int64_t D, double alpha, int bias,
                       int rounds_per_schedule, int schedules, uint64_t seed);

} // namespace wbl
