#include "wbl/transcript.hpp"

#include <fstream>
#include <sstream>

namespace wbl {

std::string Transcript::serialize() const {
    std::ostringstream os;
    os << "WBGAME n=" << config.n << " b=" << config.b
       << " first=" << (config.first_mover == Player::Walker ? 'W' : 'B')
       << " seed=" << config.rng_seed << " profile=" << config.profile << '\n';
    for (const Line& l : lines) {
        switch (l.kind) {
        case Line::Kind::Walker:
            os << "W " << l.move.from << ' ' << l.move.to << ' '
               << (l.move.reused ? 1 : 0) << '\n';
            break;
        case Line::Kind::Breaker: {
            os << 'B';
            for (const EdgeId& e : l.move.edges) os << ' ' << e.u << '-' << e.v;
            os << '\n';
            break;
        }
        case Line::Kind::Comment:
            os << "# " << l.comment << '\n';
            break;
        }
    }
    if (certificate) os << certificate_to_string(*certificate) << '\n';
    return os.str();
}

namespace {

GameConfig parse_header(const std::string& line, int lineno) {
    std::istringstream is(line);
    std::string tag;
    is >> tag;
    if (tag != "WBGAME") throw ReplayDivergence(lineno, "missing WBGAME header");
    GameConfig cfg;
    std::string kv;
    while (is >> kv) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw ReplayDivergence(lineno, "bad header field: " + kv);
        std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "n") cfg.n = std::stoi(val);
        else if (key == "b") cfg.b = std::stoi(val);
        else if (key == "first")
            cfg.first_mover = (val == "W") ? Player::Walker : Player::Breaker;
        else if (key == "seed") cfg.rng_seed = std::stoull(val);
        else if (key == "profile") cfg.profile = val;
        else throw ReplayDivergence(lineno, "unknown header field: " + key);
    }
    return cfg;
}

} // namespace

Transcript Transcript::parse(std::istream& in) {
    Transcript t;
    std::string line;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (!have_header) {
            t.config = parse_header(line, lineno);
            have_header = true;
            continue;
        }
        if (line[0] == '#') {
            size_t start = line.size() > 1 && line[1] == ' ' ? 2 : 1;
            t.add_comment(line.substr(start));
            continue;
        }
        if (line.rfind("CYCLE", 0) == 0 || line.rfind("PATH", 0) == 0) {
            auto c = certificate_from_string(line);
            if (!c) throw ReplayDivergence(lineno, "bad certificate line");
            t.certificate = std::move(c);
            continue;
        }
        std::istringstream is(line);
        char kind;
        is >> kind;
        if (kind == 'W') {
            Move m;
            m.kind = Move::Kind::WalkerStep;
            int reused;
            if (!(is >> m.from >> m.to >> reused))
                throw ReplayDivergence(lineno, "bad walker line");
            m.reused = reused != 0;
            t.add_move(m);
        } else if (kind == 'B') {
            Move m;
            m.kind = Move::Kind::BreakerClaim;
            std::string pair;
            while (is >> pair) {
                auto dash = pair.find('-');
                if (dash == std::string::npos)
                    throw ReplayDivergence(lineno, "bad breaker edge: " + pair);
                Vertex u = std::stoi(pair.substr(0, dash));
                Vertex v = std::stoi(pair.substr(dash + 1));
                m.edges.push_back(EdgeId{u, v});
            }
            t.add_move(m);
        } else {
            throw ReplayDivergence(lineno, "unrecognized line");
        }
    }
    if (!have_header) throw ReplayDivergence(0, "empty transcript");
    return t;
}

Transcript Transcript::parse_string(const std::string& text) {
    std::istringstream is(text);
    return parse(is);
}

Transcript Transcript::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GameError("cannot open transcript: " + path);
    return parse(in);
}

void Transcript::save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw GameError("cannot write transcript: " + path);
    out << serialize();
}

ReplayReport replay(const Transcript& t) {
    GameConfig cfg = t.config;
    cfg.validate();
    Game game(cfg);
    ReplayReport rep;
    int lineno = 1; // header was line 1
    for (const auto& l : t.lines) {
        ++lineno;
        if (l.kind == Transcript::Line::Kind::Comment) continue;
        try {
            if (l.kind == Transcript::Line::Kind::Walker) {
                if (game.position() != l.move.from)
                    throw ReplayDivergence(lineno, "walker not at recorded position");
                bool will_reuse = game.board().is_walker(l.move.from, l.move.to);
                if (will_reuse != l.move.reused)
                    throw ReplayDivergence(lineno, "reuse flag mismatch");
                game.walker_step(l.move.to);
            } else {
                game.breaker_claim(l.move.edges);
            }
        } catch (const ReplayDivergence&) {
            throw;
        } catch (const GameError& e) {
            throw ReplayDivergence(lineno, e.what());
        }
        ++rep.moves_replayed;
    }
    if (t.certificate) {
        rep.certificate_present = true;
        rep.certificate_valid = validate_certificate(game, *t.certificate);
        if (!rep.certificate_valid)
            throw ReplayDivergence(lineno + 1, "certificate invalid against final state");
        rep.certificate_length = (int)t.certificate->vertices.size();
    }
    return rep;
}

} // namespace wbl
