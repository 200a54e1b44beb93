#include "wbl/experiment.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <queue>
#include <set>

#include "json.hpp"

#include "wbl/diameter_builder.hpp"
#include "wbl/randomized_walker.hpp"
#include "wbl/strategy.hpp"

namespace wbl {

namespace {

using nlohmann::json;

const std::set<std::string> kKinds{"match", "tree", "randomized"};
const std::map<std::string, std::set<std::string>> kAssertions{
    {"match", {"certificate", "cycle-n2", "rounds-2n"}},
    {"tree", {"tree-bounds"}},
    {"randomized", {"fII-bound", "dH-bound"}},
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

std::string outcome_name(MatchOutcome o) {
    switch (o) {
        case MatchOutcome::WalkerFinished: return "finished";
        case MatchOutcome::WalkerStuck: return "stuck";
        case MatchOutcome::Stopped: return "stopped";
        case MatchOutcome::BoardExhausted: return "exhausted";
    }
    return "?";
}

std::string resolve_output(const std::string& path) {
    if (path.empty()) return path;
    const char* root = std::getenv("WBL_OUT");
    if (!root || path.front() == '/') return path;
    return std::string(root) + "/" + path;
}

uint64_t fnv1a(const std::string& s) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// vertex count, edge count and diameter of the walker graph, recomputed
// from the raw move lines rather than trusted from strategy reports
struct TranscriptStats {
    int vertices = 0;
    int64_t edges = 0;
    int diameter = 0;
    int walker_moves = 0;
};

TranscriptStats recompute_from_transcript(const Transcript& t) {
    TranscriptStats out;
    std::set<EdgeId> edges;
    std::set<Vertex> verts;
    for (const auto& l : t.lines) {
        if (l.kind != Transcript::Line::Kind::Walker) continue;
        ++out.walker_moves;
        edges.insert(EdgeId::make(l.move.from, l.move.to));
        verts.insert(l.move.from);
        verts.insert(l.move.to);
    }
    out.vertices = (int)verts.size();
    out.edges = (int64_t)edges.size();
    if (verts.empty()) return out;
    std::map<Vertex, std::vector<Vertex>> adj;
    for (const EdgeId& e : edges) {
        adj[e.u].push_back(e.v);
        adj[e.v].push_back(e.u);
    }
    auto far = [&](Vertex s) {
        std::map<Vertex, int> dist{{s, 0}};
        std::queue<Vertex> q;
        q.push(s);
        std::pair<Vertex, int> best{s, 0};
        while (!q.empty()) {
            Vertex u = q.front();
            q.pop();
            for (Vertex w : adj[u])
                if (!dist.count(w)) {
                    dist[w] = dist[u] + 1;
                    q.push(w);
                    if (dist[w] > best.second) best = {w, dist[w]};
                }
        }
        return best;
    };
    out.diameter = far(far(*verts.begin()).first).second;
    return out;
}

GameConfig parse_game(const json& j) {
    GameConfig cfg;
    cfg.n = j.at("n").get<int>();
    cfg.b = j.value("b", 1);
    std::string first = j.value("first", "W");
    if (first != "W" && first != "B")
        throw ConfigError("game.first must be \"W\" or \"B\"");
    cfg.first_mover = first == "W" ? Player::Walker : Player::Breaker;
    cfg.profile = j.value("profile", "paper");
    cfg.start_vertex = j.value("start", 0);
    return cfg;
}

void check_assertion_names(const ExperimentSpec& spec) {
    const auto& known = kAssertions.at(spec.kind);
    for (const auto& a : spec.assertions)
        if (!known.count(a))
            throw ConfigError("unknown assertion \"" + a + "\" for kind " +
                              spec.kind);
}

bool wants(const ExperimentSpec& spec, const std::string& name) {
    for (const auto& a : spec.assertions)
        if (a == name) return true;
    return false;
}

void require_registered(const std::string& name,
                        const std::vector<std::string>& names,
                        const char* side) {
    for (const auto& nm : names)
        if (nm == name) return;
    throw ConfigError(std::string(side) + " strategy \"" + name +
                      "\" is not registered");
}

void maybe_save_transcript(const ExperimentSpec& spec, const Transcript& t,
                           uint64_t seed) {
    if (spec.transcript_dir.empty()) return;
    std::string dir = resolve_output(spec.transcript_dir);
    std::filesystem::create_directories(dir);
    t.save(dir + "/trial_" + std::to_string(seed) + ".wbt");
}

TrialResult run_match_trial(const ExperimentSpec& spec, uint64_t seed) {
    TrialResult tr;
    tr.seed = seed;
    GameConfig cfg = spec.game;
    cfg.rng_seed = seed;
    StrategyContext ctx{cfg, make_profile(cfg.profile, cfg.n)};
    auto w = make_walker(spec.walker, ctx);
    auto b = make_breaker(spec.breaker, ctx);
    auto res = run_match(cfg, *w, *b);
    // certificate quantities come from an independent replay
    auto rep = replay(res.transcript);
    maybe_save_transcript(spec, res.transcript, seed);

    tr.stats["rounds"] = res.rounds;
    tr.stats["certificate_valid"] = rep.certificate_valid ? 1 : 0;
    tr.stats["cycle_length"] = rep.certificate_length;
    tr.csv_row = std::to_string(seed) + "," + std::to_string(cfg.n) + "," +
                 std::to_string(cfg.b) + "," + spec.walker + "," + spec.breaker +
                 "," + outcome_name(res.outcome) + "," +
                 std::to_string(res.rounds) + "," +
                 (rep.certificate_valid ? "1" : "0") + "," +
                 std::to_string(rep.certificate_length);

    if (wants(spec, "certificate") && !rep.certificate_valid)
        throw StrategyFault("no valid certificate");
    if (wants(spec, "cycle-n2") && rep.certificate_length < cfg.n - 2)
        throw StrategyFault("cycle length " +
                            std::to_string(rep.certificate_length) +
                            " below n-2");
    if (wants(spec, "rounds-2n") && res.rounds > 2 * cfg.n)
        throw StrategyFault("rounds " + std::to_string(res.rounds) +
                            " above 2n");
    return tr;
}

TrialResult run_tree_trial(const ExperimentSpec& spec, uint64_t seed) {
    TrialResult tr;
    tr.seed = seed;
    GameConfig cfg = spec.game;
    cfg.rng_seed = seed;
    StrategyContext ctx{cfg, make_profile(cfg.profile, cfg.n)};
    auto b = make_breaker(spec.breaker, ctx);
    auto res = build_low_diameter_tree(cfg, *b);
    replay(res.match.transcript); // legality re-check
    auto st = recompute_from_transcript(res.match.transcript);
    maybe_save_transcript(spec, res.match.transcript, seed);

    tr.stats["vertices"] = st.vertices;
    tr.stats["edges"] = (double)st.edges;
    tr.stats["diameter"] = st.diameter;
    tr.stats["rounds"] = res.report.rounds;
    tr.csv_row = std::to_string(seed) + "," + std::to_string(cfg.n) + "," +
                 std::to_string(cfg.b) + "," + spec.breaker + "," +
                 std::to_string(st.vertices) + "," + std::to_string(st.edges) +
                 "," + std::to_string(st.diameter) + "," +
                 std::to_string(res.report.rounds) + "," +
                 std::to_string(res.report.depth);

    if (wants(spec, "tree-bounds")) {
        auto params = make_builder_params(cfg.n, cfg.b, ctx.profile);
        if (st.diameter != res.report.diameter)
            throw StrategyFault("transcript diameter disagrees with report");
        if (st.vertices < cfg.n - params.stage3_stop)
            throw StrategyFault("tree too small: " +
                                std::to_string(st.vertices));
        if (st.diameter > params.diameter_bound)
            throw StrategyFault("diameter " + std::to_string(st.diameter) +
                                " above bound");
        if (res.report.rounds > 6 * cfg.n)
            throw StrategyFault("rounds above 6n");
    }
    return tr;
}

TrialResult run_randomized_trial(const ExperimentSpec& spec, uint64_t seed) {
    TrialResult tr;
    tr.seed = seed;
    GameConfig cfg = spec.game;
    cfg.rng_seed = seed;
    cfg.record_moves = false;
    StrategyContext ctx{cfg, make_profile(cfg.profile, cfg.n)};
    auto breaker = make_breaker(spec.breaker, ctx);

    PropTreeWalker walker(ctx.profile);
    auto built = run_match(cfg, walker, *breaker);
    Game& g = *built.final_state;

    std::vector<Vertex> Vprime;
    for (Vertex v = 0; v < cfg.n; ++v)
        if (g.visited().test(v)) Vprime.push_back(v);
    const bool paper = cfg.profile == "paper";
    double margin = paper ? (400.0 + 60.0 / spec.epsilon) * cfg.b
                          : std::ceil((10.0 + 2.0 / spec.epsilon) * cfg.b);
    int N = cfg.n - (int)margin;
    if (N < 3) throw ConfigError("n too small for the randomized pipeline");
    auto Vstar = select_Vstar(g.board(), Vprime, N,
                              spec.epsilon * (double)cfg.n / 2.0);

    RandConfig rc;
    rc.n = (int)Vstar.size();
    rc.b = cfg.b;
    rc.epsilon = spec.epsilon;
    rc.p = spec.p > 0.0
               ? spec.p
               : std::log((double)cfg.n) *
                     std::log(std::log(std::log((double)cfg.n))) / cfg.n;
    rc.d = std::max(walker.params().diameter_bound, spec.d);
    rc.seed = seed;
    rc.profile = cfg.profile;
    auto res = run_randomized_strategy(g, Vstar, rc, *breaker);
    const RunReport& r = res.report;

    tr.stats["max_fII"] = r.max_fII;
    tr.stats["min_dH"] = r.min_dH;
    tr.stats["min_ratio"] = r.min_ratio;
    tr.stats["max_active_danger"] = (double)r.max_active_danger;
    tr.stats["H_edges"] = (double)res.H_edges.size();
    tr.csv_row = std::to_string(seed) + "," + std::to_string(cfg.n) + "," +
                 std::to_string(r.n) + "," + std::to_string(r.b) + "," +
                 fmt(r.p) + "," + fmt(r.epsilon) + "," + std::to_string(r.d) +
                 "," + std::to_string(r.max_fII) + "," +
                 std::to_string(r.min_dH) + "," + fmt(r.min_ratio) + "," +
                 std::to_string(r.max_active_danger);

    if (wants(spec, "fII-bound") &&
        (double)r.max_fII > 3.9 * rc.epsilon * r.n * rc.p)
        throw StrategyFault("max_fII above 3.9 eps N p");
    if (wants(spec, "dH-bound") && (double)r.min_dH < 0.99 * r.n * rc.p)
        throw StrategyFault("min_dH below 0.99 N p");
    return tr;
}

const char* csv_columns(const std::string& kind) {
    if (kind == "match")
        return "seed,n,b,walker,breaker,outcome,rounds,certificate_valid,"
               "cycle_length";
    if (kind == "tree")
        return "seed,n,b,breaker,vertices,edges,diameter,rounds,depth";
    return "seed,n,N,b,p,epsilon,d,max_fII,min_dH,min_ratio,"
           "max_active_danger";
}

} // namespace

ExperimentSpec ExperimentSpec::parse_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad experiment JSON: ") + e.what());
    }
    ExperimentSpec spec;
    try {
        spec.kind = j.at("kind").get<std::string>();
        if (!kKinds.count(spec.kind))
            throw ConfigError("unknown experiment kind \"" + spec.kind + "\"");
        spec.game = parse_game(j.at("game"));
        spec.walker = j.value("walker", "");
        spec.breaker = j.value("breaker", "");
        spec.trials = j.value("trials", 1);
        spec.seed_base = j.value("seed_base", (uint64_t)1);
        spec.parallel = j.value("parallel", true);
        if (j.contains("assert"))
            spec.assertions = j.at("assert").get<std::vector<std::string>>();
        spec.output_csv = j.value("output_csv", "");
        spec.output_json = j.value("output_json", "");
        spec.transcript_dir = j.value("transcript_dir", "");
        if (j.contains("randomized")) {
            const json& r = j.at("randomized");
            spec.epsilon = r.value("epsilon", 0.25);
            spec.p = r.value("p", 0.0);
            spec.d = r.value("d", 0);
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad experiment JSON: ") + e.what());
    }
    if (spec.trials < 1) throw ConfigError("trials must be >= 1");
    try {
        spec.game.validate();
    } catch (const InvalidConfig& e) {
        throw ConfigError(std::string("bad game config: ") + e.what());
    }
    if (spec.kind == "match") {
        if (spec.walker.empty()) throw ConfigError("match kind needs a walker");
        require_registered(spec.walker, walker_strategy_names(), "walker");
    }
    if (spec.breaker.empty()) throw ConfigError("spec needs a breaker");
    require_registered(spec.breaker, breaker_strategy_names(), "breaker");
    check_assertion_names(spec);
    return spec;
}

ExperimentSpec ExperimentSpec::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open spec file " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return parse_json(text);
}

std::string ExperimentSpec::canonical_json() const {
    json j;
    j["kind"] = kind;
    j["game"] = {{"n", game.n},
                 {"b", game.b},
                 {"first", game.first_mover == Player::Walker ? "W" : "B"},
                 {"profile", game.profile},
                 {"start", game.start_vertex}};
    j["walker"] = walker;
    j["breaker"] = breaker;
    j["trials"] = trials;
    j["seed_base"] = seed_base;
    j["assert"] = assertions;
    j["randomized"] = {{"epsilon", epsilon}, {"p", p}, {"d", d}};
    return j.dump();
}

std::string ExperimentSummary::to_json() const {
    json agg;
    for (const auto& [col, mmm] : aggregates)
        agg[col] = {{"min", mmm[0]}, {"max", mmm[1]}, {"mean", mmm[2]}};
    json j{{"spec_hash", spec_hash},
           {"trials", trials},
           {"failures", failures},
           {"aggregates", agg}};
    return j.dump(2);
}

ExperimentSummary run_experiment(const ExperimentSpec& spec) {
    ExperimentSummary sum;
    {
        char buf[24];
        std::snprintf(buf, sizeof buf, "%016llx",
                      (unsigned long long)fnv1a(spec.canonical_json()));
        sum.spec_hash = buf;
    }
    sum.trials = spec.trials;
    sum.rows.resize(spec.trials);

    auto one = [&](int i) {
        uint64_t seed = spec.seed_base + (uint64_t)i;
        try {
            if (spec.kind == "match")
                sum.rows[i] = run_match_trial(spec, seed);
            else if (spec.kind == "tree")
                sum.rows[i] = run_tree_trial(spec, seed);
            else
                sum.rows[i] = run_randomized_trial(spec, seed);
        } catch (const std::exception& e) {
            sum.rows[i].seed = seed;
            sum.rows[i].failed = true;
            sum.rows[i].error =
                "trial seed " + std::to_string(seed) + ": " + e.what();
        }
    };

    if (spec.parallel) {
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < spec.trials; ++i) one(i);
    } else {
        for (int i = 0; i < spec.trials; ++i) one(i);
    }

    // single-threaded reduce, deterministic order
    std::map<std::string, std::array<double, 3>> agg;
    std::map<std::string, int> counts;
    for (const auto& tr : sum.rows) {
        if (tr.failed) {
            ++sum.failures;
            continue;
        }
        for (const auto& [col, x] : tr.stats) {
            auto it = agg.find(col);
            if (it == agg.end()) {
                agg[col] = {x, x, x};
                counts[col] = 1;
            } else {
                it->second[0] = std::min(it->second[0], x);
                it->second[1] = std::max(it->second[1], x);
                it->second[2] += x;
                ++counts[col];
            }
        }
    }
    for (auto& [col, mmm] : agg) mmm[2] /= (double)counts[col];
    sum.aggregates = std::move(agg);

    std::string csv = "# wbl-csv " + spec.kind + " v1\n";
    csv += csv_columns(spec.kind);
    csv += '\n';
    for (const auto& tr : sum.rows) {
        if (tr.failed)
            csv += std::to_string(tr.seed) + ",FAILED," + tr.error + "\n";
        else
            csv += tr.csv_row + "\n";
    }
    sum.csv_text = std::move(csv);

    if (!spec.output_csv.empty()) {
        std::ofstream out(resolve_output(spec.output_csv));
        out << sum.csv_text;
    }
    if (!spec.output_json.empty()) {
        std::ofstream out(resolve_output(spec.output_json));
        out << sum.to_json() << '\n';
    }
    return sum;
}

} // namespace wbl
