#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "wbl/bitset.hpp"
#include "wbl/rng.hpp"

namespace wbl {

using Vertex = int32_t;

enum class Player : uint8_t { Walker, Breaker };
enum class Owner : uint8_t { Free, Walker, Breaker };

struct GameError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct InvalidConfig : GameError { using GameError::GameError; };
struct IllegalMove : GameError { using GameError::GameError; };
struct IllegalClaim : GameError { using GameError::GameError; };
struct NoPosition : GameError { using GameError::GameError; };
struct StrategyFault : GameError { using GameError::GameError; };
struct StrategyStuck : GameError { using GameError::GameError; };
struct PreconditionFailed : GameError { using GameError::GameError; };

// Canonical edge of K_n, u < v.
struct EdgeId {
    Vertex u = 0, v = 0;

    static EdgeId make(Vertex a, Vertex b) {
        if (a == b) throw InvalidConfig("EdgeId: loop " + std::to_string(a));
        return a < b ? EdgeId{a, b} : EdgeId{b, a};
    }

    bool operator==(const EdgeId&) const = default;
    auto operator<=>(const EdgeId&) const = default;
};

enum class StartPolicy : uint8_t { Declared, StrategyChosen };

struct GameConfig {
    int n = 0;
    int b = 1;
    Player first_mover = Player::Walker;
    StartPolicy start_policy = StartPolicy::Declared;
    Vertex start_vertex = 0;
    std::string profile = "paper";
    uint64_t rng_seed = 1;
    // long randomized campaigns disable the move log to bound memory
    bool record_moves = true;

    void validate() const {
        if (n < 3) throw InvalidConfig("n must be >= 3");
        if (b < 0) throw InvalidConfig("bias must be >= 0");
        if (start_vertex < 0 || start_vertex >= n)
            throw InvalidConfig("start vertex out of range");
    }
};

struct Certificate {
    enum class Kind : uint8_t { Cycle, Path };
    Kind kind = Kind::Cycle;
    std::vector<Vertex> vertices;
};

struct Move {
    enum class Kind : uint8_t { WalkerStep, BreakerClaim };
    Kind kind;
    Vertex from = -1, to = -1;
    bool reused = false;
    std::vector<EdgeId> edges; // BreakerClaim only
};

// Per-vertex neighbour set; sorted vector until the degree justifies a
// dense bit row. Keeps n=1e5 boards affordable when Breaker is sparse.
class AdjSet {
public:
    void init(int n) { n_ = n; }

    bool contains(Vertex v) const {
        if (!bits_.empty()) return (bits_[v >> 6] >> (v & 63)) & 1;
        return std::binary_search(small_.begin(), small_.end(), v);
    }

    void insert(Vertex v) {
        if (!bits_.empty()) {
            bits_[v >> 6] |= 1ULL << (v & 63);
            return;
        }
        small_.insert(std::upper_bound(small_.begin(), small_.end(), v), v);
        if ((int)small_.size() > promote_threshold()) promote();
    }

    int count_in(const VertexSet& mask) const {
        if (!bits_.empty()) {
            int c = 0;
            const auto& mw = mask.words();
            for (size_t i = 0; i < mw.size() && i < bits_.size(); ++i)
                c += std::popcount(bits_[i] & mw[i]);
            return c;
        }
        int c = 0;
        for (Vertex v : small_) c += mask.test(v) ? 1 : 0;
        return c;
    }

    template <typename F>
    void for_each(F&& f) const {
        if (!bits_.empty()) {
            for (size_t wi = 0; wi < bits_.size(); ++wi) {
                uint64_t w = bits_[wi];
                while (w) {
                    f((Vertex)(wi * 64 + std::countr_zero(w)));
                    w &= w - 1;
                }
            }
        } else {
            for (Vertex v : small_) f(v);
        }
    }

private:
    int promote_threshold() const { return std::max(64, n_ / 512); }

    void promote() {
        bits_.assign((n_ + 63) / 64, 0);
        for (Vertex v : small_) bits_[v >> 6] |= 1ULL << (v & 63);
        small_.clear();
        small_.shrink_to_fit();
    }

    int n_ = 0;
    std::vector<Vertex> small_;
    std::vector<uint64_t> bits_;
};

// Edge ownership plus the degree ledgers the strategies query constantly.
class Board {
public:
    explicit Board(int n);

    int n() const { return n_; }
    int64_t total_edges() const { return (int64_t)n_ * (n_ - 1) / 2; }
    int64_t free_edges() const { return free_count_; }
    int64_t walker_edges() const { return walker_count_; }
    int64_t breaker_edges() const { return breaker_count_; }

    Owner owner(Vertex a, Vertex b) const {
        if (badj_[a].contains(b)) return Owner::Breaker;
        if (wadj_[a].contains(b)) return Owner::Walker;
        return Owner::Free;
    }
    bool is_free(Vertex a, Vertex b) const { return owner(a, b) == Owner::Free; }
    bool is_breaker(Vertex a, Vertex b) const { return badj_[a].contains(b); }
    bool is_walker(Vertex a, Vertex b) const { return wadj_[a].contains(b); }

    void claim_walker(Vertex a, Vertex b);
    void claim_breaker(Vertex a, Vertex b);

    int dW(Vertex v) const { return dW_[v]; }
    int dB(Vertex v) const { return dB_[v]; }
    int dF(Vertex v) const { return n_ - 1 - dW_[v] - dB_[v]; }

    // e_B(v, mask) / e_W(v, mask)
    int dB_in(Vertex v, const VertexSet& mask) const { return badj_[v].count_in(mask); }
    int dW_in(Vertex v, const VertexSet& mask) const { return wadj_[v].count_in(mask); }

    const AdjSet& breaker_adj(Vertex v) const { return badj_[v]; }
    const AdjSet& walker_adj(Vertex v) const { return wadj_[v]; }

    // Lowest-index free edge in (u,v) lexicographic order, for the
    // deterministic "arbitrary edge" fallbacks. Cursor is monotone since
    // ownership never reverts.
    std::optional<EdgeId> lowest_free_edge() const;

    EdgeId random_free_edge(Rng& rng) const;

private:
    int n_;
    std::vector<AdjSet> badj_, wadj_;
    std::vector<int32_t> dB_, dW_;
    int64_t free_count_, walker_count_ = 0, breaker_count_ = 0;
    mutable Vertex cur_u_ = 0, cur_v_ = 1;
};

// Full game state: board + walk bookkeeping + move log.
class Game {
public:
    explicit Game(GameConfig cfg);

    const GameConfig& config() const { return cfg_; }
    Board& board() { return board_; }
    const Board& board() const { return board_; }

    bool started() const { return started_; }
    Vertex position() const {
        if (!started_) throw NoPosition("walker has no position yet");
        return pos_;
    }

    int round() const { return round_; } // completed Walker moves
    const std::vector<Move>& move_log() const { return log_; }

    const VertexSet& visited() const { return visited_; }
    int visited_count() const { return visited_count_; }
    const std::vector<Vertex>& visit_order() const { return visit_order_; }

    void set_start(Vertex v);
    void walker_step(Vertex target);
    void breaker_claim(std::span<const EdgeId> edges);

    std::vector<Vertex> legal_walker_targets() const;
    bool has_legal_walker_target() const;

    // Test/setup helper: hands Walker a connected pre-claimed graph (e.g.
    // the W_0 of a game already in progress) without logging moves.
    void preclaim_walker(std::span<const EdgeId> edges, Vertex position);
    void preclaim_breaker(std::span<const EdgeId> edges);

private:
    void touch(Vertex v);

    GameConfig cfg_;
    Board board_;
    bool started_ = false;
    Vertex pos_ = -1;
    int round_ = 0;
    VertexSet visited_;
    int visited_count_ = 0;
    std::vector<Vertex> visit_order_;
    std::vector<Move> log_;
};

Game new_game(const GameConfig& cfg);

// True iff the certificate's edges are all WalkerOwned and its vertices
// are distinct; false on any malformed input.
bool validate_certificate(const Game& game, const Certificate& cert);

std::string certificate_to_string(const Certificate& cert);
std::optional<Certificate> certificate_from_string(const std::string& line);

} // namespace wbl
