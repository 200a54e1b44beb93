#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wbl/board.hpp"

namespace wbl {

struct ReplayDivergence : GameError {
    ReplayDivergence(int line, const std::string& msg)
        : GameError("replay divergence at line " + std::to_string(line) + ": " + msg),
          line_number(line) {}
    int line_number;
};

// Line-delimited match record. One move per line:
//   W <from> <to> <reused:0|1>
//   B <u>-<v> [<u>-<v> ...]
// plus '#'-comment lines and an optional trailing CYCLE/PATH certificate.
struct Transcript {
    struct Line {
        enum class Kind : uint8_t { Walker, Breaker, Comment } kind;
        Move move;           // Walker/Breaker lines
        std::string comment; // Comment lines, without the leading "# "
    };

    GameConfig config;
    std::vector<Line> lines;
    std::optional<Certificate> certificate;

    void add_move(const Move& m) {
        lines.push_back(Line{m.kind == Move::Kind::WalkerStep
                                 ? Line::Kind::Walker
                                 : Line::Kind::Breaker,
                             m, {}});
    }
    void add_comment(const std::string& text) {
        lines.push_back(Line{Line::Kind::Comment, {}, text});
    }

    std::string serialize() const;
    static Transcript parse(std::istream& in);
    static Transcript parse_string(const std::string& text);
    static Transcript load(const std::string& path);
    void save(const std::string& path) const;
};

struct ReplayReport {
    int moves_replayed = 0;
    bool certificate_present = false;
    bool certificate_valid = false;
    int certificate_length = 0;
};

// Re-executes the transcript through a fresh engine, enforcing legality on
// every line. Throws ReplayDivergence on the first mismatch.
ReplayReport replay(const Transcript& t);

} // namespace wbl
