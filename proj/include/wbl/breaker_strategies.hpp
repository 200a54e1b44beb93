#pragma once

#include <optional>
#include <vector>

#include "wbl/rng.hpp"
#include "wbl/strategy.hpp"

namespace wbl {

// Fixes one untouched vertex after Walker's first move and forever claims
// the edge from it to Walker's position; the fixed vertex is never visited.
class IsolateOneBreaker : public BreakerStrategy {
public:
    std::vector<EdgeId> claim(const Game& g) override;
    std::optional<Vertex> fixed_vertex() const { return fixed_; }

private:
    std::optional<Vertex> fixed_;
};

// Biased version: b untouched targets, each round claims the free edges
// between them and Walker's position, padding with lowest-index free edges.
class MultiIsolateBreaker : public BreakerStrategy {
public:
    std::vector<EdgeId> claim(const Game& g) override;
    const std::vector<Vertex>& targets() const { return targets_; }

private:
    std::vector<Vertex> targets_;
};

// The unbiased cycle-prevention strategy: blocks a vertex w1 until Walker's
// component reaches n-2, then switches to blocking the remaining outsider w2.
class PreventLongCycleBreaker : public BreakerStrategy {
public:
    std::vector<EdgeId> claim(const Game& g) override;

    enum class Phase : uint8_t { One, Two };
    Phase phase() const { return phase_; }
    Vertex w1() const { return w1_; }
    std::optional<Vertex> w2() const { return w2_; }

private:
    Phase phase_ = Phase::One;
    Vertex w1_ = -1;
    std::optional<Vertex> w2_;
};

class RandomBreaker : public BreakerStrategy {
public:
    explicit RandomBreaker(uint64_t seed) : rng_(seed) {}
    std::vector<EdgeId> claim(const Game& g) override;

private:
    Rng rng_;
};

// Blocks the cycle-closing edge (v0, position) every round; the adversary
// the unbiased Walker analysis is hardest against. Test/benchmark use.
class BlockStartBreaker : public BreakerStrategy {
public:
    std::vector<EdgeId> claim(const Game& g) override;
};

// Baseline walker: uniformly random legal step.
class RandomWalker : public WalkerStrategy {
public:
    explicit RandomWalker(uint64_t seed) : rng_(seed) {}
    std::optional<Vertex> next_step(const Game& g) override;

private:
    Rng rng_;
};

// Fills a claim list up to min(b, free) with deterministic lowest-index
// free edges, skipping edges already in the list.
void pad_with_lowest_free(const Game& g, std::vector<EdgeId>& edges);

} // namespace wbl
