#include "wbl/board.hpp"

#include <sstream>

namespace wbl {

Board::Board(int n)
    : n_(n), badj_(n), wadj_(n), dB_(n, 0), dW_(n, 0),
      free_count_((int64_t)n * (n - 1) / 2) {
    for (int v = 0; v < n; ++v) {
        badj_[v].init(n);
        wadj_[v].init(n);
    }
}

void Board::claim_walker(Vertex a, Vertex b) {
    if (!is_free(a, b)) throw IllegalMove("edge not free");
    wadj_[a].insert(b);
    wadj_[b].insert(a);
    ++dW_[a];
    ++dW_[b];
    ++walker_count_;
    --free_count_;
}

void Board::claim_breaker(Vertex a, Vertex b) {
    if (!is_free(a, b)) throw IllegalClaim("edge not free");
    badj_[a].insert(b);
    badj_[b].insert(a);
    ++dB_[a];
    ++dB_[b];
    ++breaker_count_;
    --free_count_;
}

std::optional<EdgeId> Board::lowest_free_edge() const {
    if (free_count_ == 0) return std::nullopt;
    while (cur_u_ < n_ - 1) {
        if (cur_v_ <= cur_u_) cur_v_ = cur_u_ + 1;
        while (cur_v_ < n_) {
            if (is_free(cur_u_, cur_v_)) return EdgeId{cur_u_, cur_v_};
            ++cur_v_;
        }
        ++cur_u_;
        cur_v_ = cur_u_ + 1;
    }
    return std::nullopt;
}

EdgeId Board::random_free_edge(Rng& rng) const {
    if (free_count_ == 0) throw IllegalClaim("no free edge left");
    // Rejection sampling while the board is mostly free; k-th free scan
    // once the free fraction gets thin.
    if (free_count_ * 16 >= total_edges()) {
        while (true) {
            Vertex a = (Vertex)rng.below((uint64_t)n_);
            Vertex b = (Vertex)rng.below((uint64_t)n_);
            if (a == b) continue;
            if (a > b) std::swap(a, b);
            if (is_free(a, b)) return EdgeId{a, b};
        }
    }
    int64_t k = (int64_t)rng.below((uint64_t)free_count_);
    for (Vertex u = 0; u < n_ - 1; ++u) {
        for (Vertex v = u + 1; v < n_; ++v) {
            if (is_free(u, v) && k-- == 0) return EdgeId{u, v};
        }
    }
    throw IllegalClaim("free-edge count out of sync");
}

Game::Game(GameConfig cfg)
    : cfg_(std::move(cfg)), board_(cfg_.n), visited_(cfg_.n) {
    if (cfg_.start_policy == StartPolicy::Declared) set_start(cfg_.start_vertex);
}

Game new_game(const GameConfig& cfg) {
    cfg.validate();
    return Game(cfg);
}

void Game::set_start(Vertex v) {
    if (started_) throw IllegalMove("start vertex already set");
    if (v < 0 || v >= cfg_.n) throw InvalidConfig("start vertex out of range");
    started_ = true;
    pos_ = v;
    touch(v);
}

void Game::touch(Vertex v) {
    if (!visited_.test(v)) {
        visited_.set(v);
        ++visited_count_;
        visit_order_.push_back(v);
    }
}

void Game::walker_step(Vertex target) {
    if (!started_) throw NoPosition("walker has no position yet");
    if (target < 0 || target >= cfg_.n || target == pos_)
        throw IllegalMove("bad step target");
    Owner o = board_.owner(pos_, target);
    if (o == Owner::Breaker) throw IllegalMove("edge is Breaker-owned");
    bool reused = (o == Owner::Walker);
    if (!reused) board_.claim_walker(pos_, target);
    if (cfg_.record_moves)
        log_.push_back(Move{Move::Kind::WalkerStep, pos_, target, reused, {}});
    pos_ = target;
    touch(target);
    ++round_;
}

void Game::breaker_claim(std::span<const EdgeId> edges) {
    int64_t want = std::min<int64_t>(cfg_.b, board_.free_edges());
    if ((int64_t)edges.size() != want)
        throw IllegalClaim("claim must take min(b, free) edges");
    for (size_t i = 0; i < edges.size(); ++i)
        for (size_t j = i + 1; j < edges.size(); ++j)
            if (edges[i] == edges[j]) throw IllegalClaim("duplicate edge in claim");
    for (const EdgeId& e : edges) {
        if (e.u < 0 || e.v >= cfg_.n || e.u >= e.v)
            throw IllegalClaim("edge out of range");
        board_.claim_breaker(e.u, e.v);
    }
    if (cfg_.record_moves)
        log_.push_back(Move{Move::Kind::BreakerClaim, -1, -1, false,
                            std::vector<EdgeId>(edges.begin(), edges.end())});
}

std::vector<Vertex> Game::legal_walker_targets() const {
    if (!started_) throw NoPosition("walker has no position yet");
    std::vector<Vertex> out;
    for (Vertex w = 0; w < cfg_.n; ++w)
        if (w != pos_ && !board_.is_breaker(pos_, w)) out.push_back(w);
    return out;
}

bool Game::has_legal_walker_target() const {
    if (!started_) return false;
    return board_.dB(pos_) < cfg_.n - 1;
}

void Game::preclaim_walker(std::span<const EdgeId> edges, Vertex position) {
    for (const EdgeId& e : edges) {
        board_.claim_walker(e.u, e.v);
        touch(e.u);
        touch(e.v);
    }
    started_ = true;
    pos_ = position;
    touch(position);
}

void Game::preclaim_breaker(std::span<const EdgeId> edges) {
    for (const EdgeId& e : edges) board_.claim_breaker(e.u, e.v);
}

bool validate_certificate(const Game& game, const Certificate& cert) {
    const auto& vs = cert.vertices;
    size_t min_len = cert.kind == Certificate::Kind::Cycle ? 3 : 2;
    if (vs.size() < min_len) return false;
    VertexSet seen(game.config().n);
    for (Vertex v : vs) {
        if (v < 0 || v >= game.config().n) return false;
        if (seen.test(v)) return false;
        seen.set(v);
    }
    for (size_t i = 0; i + 1 < vs.size(); ++i)
        if (!game.board().is_walker(vs[i], vs[i + 1])) return false;
    if (cert.kind == Certificate::Kind::Cycle &&
        !game.board().is_walker(vs.back(), vs.front()))
        return false;
    return true;
}

std::string certificate_to_string(const Certificate& cert) {
    std::ostringstream os;
    os << (cert.kind == Certificate::Kind::Cycle ? "CYCLE" : "PATH");
    for (Vertex v : cert.vertices) os << ' ' << v;
    return os.str();
}

std::optional<Certificate> certificate_from_string(const std::string& line) {
    std::istringstream is(line);
    std::string tag;
    if (!(is >> tag)) return std::nullopt;
    Certificate c;
    if (tag == "CYCLE") c.kind = Certificate::Kind::Cycle;
    else if (tag == "PATH") c.kind = Certificate::Kind::Path;
    else return std::nullopt;
    Vertex v;
    while (is >> v) c.vertices.push_back(v);
    if (c.vertices.empty()) return std::nullopt;
    return c;
}

} // namespace wbl
