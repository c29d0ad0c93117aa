#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "reground/errors.hpp"
#include "reground/eval.hpp"
#include "reground/resolver.hpp"

using namespace reground;
using namespace reground::testutil;

namespace {

GroundingResult run_fixture(const std::string& dsl) {
  static SceneModel scene = load_scene_file(kKitchenScene);
  static NeighborGraph graph = build_graph(scene, "LookingSouth");
  return resolve(parse_query(dsl), scene, graph);
}

}  // namespace

TEST_SUITE("resolver") {

TEST_CASE("grounds the drawer next to the fridge") {
  auto r = run_fixture("(select (category Drawer) (rel next-to (select (category Fridge))))");
  CHECK(r.matches == std::vector<std::string>{"Drawer29"});
  CHECK_FALSE(r.ambiguous);
}

TEST_CASE("grounds a bare category") {
  auto r = run_fixture("(select (category Microwave))");
  CHECK(r.matches == std::vector<std::string>{"Microwave43"});
  CHECK_FALSE(r.ambiguous);
}

TEST_CASE("grounds the high cabinet to the left of the microwave") {
  auto r = run_fixture(
      "(select (category Cabinet) (band high) (rel left-of (select (category Microwave))))");
  CHECK(r.matches == std::vector<std::string>{"Cabinet14"});
}

TEST_CASE("grounds the bottom drawer next to the dishwasher") {
  auto r = run_fixture(
      "(select (category Drawer) (rel next-to (select (category Dishwasher))) (stack bottom))");
  CHECK(r.matches == std::vector<std::string>{"Drawer31"});
}

TEST_CASE("grounds a functional fact constraint from scene facts") {
  auto r = run_fixture("(select (category Drawer) (fact contains silverware))");
  CHECK(r.matches == std::vector<std::string>{"Drawer30"});
}

TEST_CASE("the whole gold suite resolves to the correct column") {
  SceneModel scene = load_scene_file(kKitchenScene);
  NeighborGraph graph = build_graph(scene, "LookingSouth");
  GoldSet gold = load_gold_set(kGoldSet);
  for (const auto& e : gold.entries) {
    GroundingResult r = resolve(parse_query(e.dsl), scene, graph);
    REQUIRE_MESSAGE(r.matches.size() == 1, "RE", e.re_id, " matched ", r.matches.size());
    CHECK_MESSAGE(id_suffix(r.matches[0]).text == e.correct, "RE", e.re_id, " got ",
                  r.matches[0]);
  }
}

TEST_CASE("empty anchors are unresolvable, not silently empty") {
  SceneModel scene = load_scene_file(kKitchenScene);
  NeighborGraph graph = build_graph(scene, "LookingSouth");
  Query q = parse_query("(select (category Drawer) (rel next-to (select (category Unicorn))))");
  CHECK_THROWS_AS(resolve(q, scene, graph), UnresolvableError);
  CHECK_THROWS_AS(brute_oracle(q, scene, "LookingSouth"), UnresolvableError);
}

TEST_CASE("trace records the filter steps") {
  auto r = run_fixture("(select (category Cabinet) (rel below (select (category Sink))))");
  CHECK(r.matches == std::vector<std::string>{"Cabinet12"});
  REQUIRE(!r.trace.empty());
  bool mentions_category = false;
  for (const auto& line : r.trace)
    mentions_category = mentions_category || line.find("category Cabinet") != std::string::npos;
  CHECK(mentions_category);
}

TEST_CASE("category-only queries agree with the oracle") {
  SceneModel scene = load_scene_file(kKitchenScene);
  NeighborGraph graph = build_graph(scene, "LookingSouth");
  for (const char* cat : {"Drawer", "Cabinet", "Microwave", "CounterTop"}) {
    Query q = parse_query("(select (category " + std::string(cat) + "))");
    CHECK(resolve(q, scene, graph).matches == brute_oracle(q, scene, "LookingSouth").matches);
  }
}

TEST_CASE("resolver equals the brute-force oracle on random instances") {
  std::mt19937 rng(1234);
  int nonempty = 0;
  for (int trial = 0; trial < 150; ++trial) {
    SceneModel scene = make_random_scene(rng);
    NeighborGraph graph = build_graph(scene, "main");
    Query q = make_random_query(rng);
    GroundingResult via_graph, via_oracle;
    bool graph_threw = false, oracle_threw = false;
    try {
      via_graph = resolve(q, scene, graph);
    } catch (const UnresolvableError&) {
      graph_threw = true;
    }
    try {
      via_oracle = brute_oracle(q, scene, "main");
    } catch (const UnresolvableError&) {
      oracle_threw = true;
    }
    REQUIRE(graph_threw == oracle_threw);
    if (!graph_threw) {
      CHECK(via_graph.matches == via_oracle.matches);
      CHECK(via_graph.ambiguous == via_oracle.ambiguous);
      if (!via_graph.matches.empty()) ++nonempty;
    }
  }
  CHECK(nonempty > 10);  // the generator must exercise real matches
}

TEST_CASE("adding a constraint never enlarges the match set") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    SceneModel scene = make_random_scene(rng);
    NeighborGraph graph = build_graph(scene, "main");
    Query q = make_random_query(rng);
    Query narrowed = q;
    narrowed.constraints.push_back(BandConstraint{Band::High});
    try {
      auto base = resolve(q, scene, graph);
      auto more = resolve(narrowed, scene, graph);
      for (const auto& id : more.matches)
        CHECK(std::find(base.matches.begin(), base.matches.end(), id) != base.matches.end());
    } catch (const UnresolvableError&) {
      continue;
    }
  }
}

TEST_CASE("identical inputs give identical matches and trace") {
  SceneModel scene = load_scene_file(kKitchenScene);
  NeighborGraph graph = build_graph(scene, "LookingSouth");
  Query q = parse_query(
      "(select (category Drawer) (rel next-to (select (category Dishwasher))) (stack middle))");
  GroundingResult a = resolve(q, scene, graph);
  GroundingResult b = resolve(q, scene, graph);
  CHECK(a.matches == b.matches);
  CHECK(a.trace == b.trace);
}

TEST_CASE("oracle rejects oversized scenes") {
  SceneModel scene = load_scene_file(kStorageScene);  // 84 objects
  Query q = parse_query("(select (category cabinet))");
  CHECK_THROWS_WITH_AS(brute_oracle(q, scene, "LookingSouth"), doctest::Contains("50"), Error&);
}

}  // TEST_SUITE
