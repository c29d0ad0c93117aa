// Scratch probe used while authoring the fixture scene. Not built by CMake.
#include <iostream>

#include "reground/neighbor_graph.hpp"
#include "reground/resolver.hpp"
#include "reground/scene.hpp"

using namespace reground;

int main() {
  SceneModel scene = load_scene_file("fixtures/kitchen_scene.json");
  NeighborGraph graph = build_graph(scene, "LookingSouth");

  std::cout << "=== Language ===\n" << render_graph(graph, GraphEncoding::Language);
  std::cout << "=== SignedAxis ===\n" << render_graph(graph, GraphEncoding::SignedAxis);
  auto [anon, mapping] = anonymize(scene);
  NeighborGraph anon_graph = build_graph(anon, "LookingSouth");
  std::cout << "=== CardinalJson ===\n" << render_graph(anon_graph, GraphEncoding::CardinalJson);

  std::cout << "=== diagnostics ===\n";
  for (const auto& d : graph.diagnostics()) std::cout << d << "\n";

  const char* gold[10] = {
      "(select (category Cabinet) (band high) (rel left-of (select (category Microwave))))",
      "(select (category Cabinet) (rel right-of (select (category Microwave)) ordinal 2))",
      "(select (category Drawer) (rel next-to (select (category Stove))) (stack top))",
      "(select (category Drawer) (rel next-to (select (category Fridge))))",
      "(select (category Drawer) (rel next-to (select (category Dishwasher))) (stack middle))",
      "(select (category Cabinet) (band low) (rel next-to (select (category Fridge))))",
      "(select (category Cabinet) (rel below (select (category Sink))))",
      "(select (category Drawer) (rel left-of (select (category Stove)) ordinal 4))",
      "(select (category Drawer) (rel next-to (select (category Dishwasher))) (stack bottom))",
      "(select (category Cabinet) (rel left-of (select (category Microwave)) ordinal 2))",
  };
  const char* want[10] = {"Cabinet14", "Cabinet8",  "Drawer30", "Drawer29", "Drawer23",
                          "Cabinet9",  "Cabinet12", "Drawer26", "Drawer31", "Cabinet7"};
  int ok = 0;
  for (int i = 0; i < 10; ++i) {
    Query q = parse_query(gold[i]);
    GroundingResult r = resolve(q, scene, graph);
    GroundingResult o = brute_oracle(q, scene, "LookingSouth");
    bool hit = r.matches.size() == 1 && r.matches[0] == want[i];
    bool agree = r.matches == o.matches;
    std::cout << "RE" << (i + 1) << ": got [";
    for (const auto& m : r.matches) std::cout << m << " ";
    std::cout << "] want " << want[i] << (hit ? "  OK" : "  MISS")
              << (agree ? "" : "  ORACLE-DISAGREES") << "\n";
    if (hit && agree) ++ok;
  }
  std::cout << ok << "/10\n";
  return ok == 10 ? 0 : 1;
}
