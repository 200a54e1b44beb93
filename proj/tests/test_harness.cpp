#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "wbl/experiment.hpp"
#include "wbl/strategy.hpp"

using namespace wbl;

namespace {

const char* kMatchSpec = R"({
  "kind": "match",
  "game": {"n": 300, "b": 1, "first": "B", "profile": "scaled"},
  "walker": "thm1-cycle",
  "breaker": "prevent-n2",
  "trials": 5,
  "seed_base": 10,
  "assert": ["certificate", "rounds-2n"]
})";

} // namespace

TEST_CASE("malformed specs fail before any trial") {
    CHECK_THROWS_AS(ExperimentSpec::parse_json("{not json"), ConfigError);
    CHECK_THROWS_AS(ExperimentSpec::parse_json("{}"), ConfigError);
    CHECK_THROWS_AS(ExperimentSpec::parse_json(
                        R"({"kind":"nope","game":{"n":10},"breaker":"random"})"),
                    ConfigError);
    CHECK_THROWS_AS(
        ExperimentSpec::parse_json(
            R"({"kind":"match","game":{"n":10},"walker":"bogus","breaker":"random"})"),
        ConfigError);
    CHECK_THROWS_AS(
        ExperimentSpec::parse_json(
            R"({"kind":"match","game":{"n":10},"walker":"random","breaker":"bogus"})"),
        ConfigError);
    CHECK_THROWS_AS(
        ExperimentSpec::parse_json(
            R"({"kind":"tree","game":{"n":10},"breaker":"random","assert":["certificate"]})"),
        ConfigError);
    CHECK_THROWS_AS(
        ExperimentSpec::parse_json(
            R"({"kind":"match","game":{"n":2},"walker":"random","breaker":"random"})"),
        ConfigError);
    CHECK_THROWS_AS(
        ExperimentSpec::parse_json(
            R"({"kind":"match","game":{"n":10},"walker":"random","breaker":"random","trials":0})"),
        ConfigError);
    CHECK_THROWS_AS(
        ExperimentSpec::parse_json(
            R"({"kind":"match","game":{"n":10,"first":"X"},"walker":"random","breaker":"random"})"),
        ConfigError);
}

TEST_CASE("spec hash is stable across parses") {
    auto a = ExperimentSpec::parse_json(kMatchSpec);
    auto b = ExperimentSpec::parse_json(kMatchSpec);
    CHECK(a.canonical_json() == b.canonical_json());
    CHECK(run_experiment(ExperimentSpec::parse_json(
                             R"({"kind":"match","game":{"n":20,"profile":"scaled"},
              "walker":"random","breaker":"random","trials":1})"))
              .spec_hash ==
          run_experiment(ExperimentSpec::parse_json(
                             R"({"kind":"match","game":{"n":20,"profile":"scaled"},
              "walker":"random","breaker":"random","trials":1})"))
              .spec_hash);
}

TEST_CASE("cycle campaign: every row certified at n-2 against prevent-n2") {
    auto spec = ExperimentSpec::parse_json(kMatchSpec);
    auto sum = run_experiment(spec);
    CHECK(sum.failures == 0);
    CHECK(sum.trials == 5);
    CHECK(sum.aggregates.at("cycle_length")[0] == 298.0);
    CHECK(sum.aggregates.at("cycle_length")[1] == 298.0);
    CHECK(sum.aggregates.at("certificate_valid")[0] == 1.0);
    // seed of trial i is seed_base + i
    for (int i = 0; i < 5; ++i) CHECK(sum.rows[i].seed == 10u + (uint64_t)i);
}

TEST_CASE("identical spec and seeds give byte-identical CSV") {
    auto spec = ExperimentSpec::parse_json(kMatchSpec);
    auto a = run_experiment(spec);
    auto b = run_experiment(spec);
    CHECK(a.csv_text == b.csv_text);
    spec.parallel = false;
    auto c = run_experiment(spec);
    CHECK(a.csv_text == c.csv_text);
    CHECK(a.csv_text.rfind("# wbl-csv match v1\n", 0) == 0);
}

TEST_CASE("tree campaign recomputes its numbers from the transcript") {
    auto spec = ExperimentSpec::parse_json(R"({
      "kind": "tree",
      "game": {"n": 400, "b": 1, "profile": "scaled"},
      "breaker": "random",
      "trials": 3,
      "seed_base": 1,
      "assert": ["tree-bounds"]
    })");
    auto sum = run_experiment(spec);
    CHECK(sum.failures == 0);
    CHECK(sum.aggregates.at("vertices")[0] >= 390.0);
    CHECK(sum.aggregates.at("diameter")[1] <= 6.0);
}

TEST_CASE("randomized campaign aggregates run reports") {
    auto spec = ExperimentSpec::parse_json(R"({
      "kind": "randomized",
      "game": {"n": 400, "b": 1, "profile": "scaled"},
      "breaker": "isolateB",
      "trials": 2,
      "seed_base": 1,
      "randomized": {"epsilon": 0.25}
    })");
    auto sum = run_experiment(spec);
    CHECK(sum.failures == 0);
    CHECK(sum.aggregates.count("max_fII") == 1);
    CHECK(sum.aggregates.count("min_dH") == 1);
    CHECK(sum.aggregates.at("min_ratio")[0] >= 0.0);
}

TEST_CASE("failed assertions surface the trial seed") {
    // an impossible cycle bound: random walker never certifies n-2
    auto spec = ExperimentSpec::parse_json(R"({
      "kind": "match",
      "game": {"n": 50, "b": 1, "profile": "scaled"},
      "walker": "random",
      "breaker": "random",
      "trials": 2,
      "seed_base": 77,
      "assert": ["cycle-n2"]
    })");
    auto sum = run_experiment(spec);
    CHECK(sum.failures == 2);
    CHECK(sum.rows[0].error.find("seed 77") != std::string::npos);
    CHECK(sum.csv_text.find("FAILED") != std::string::npos);
}
