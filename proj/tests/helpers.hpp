#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "reground/constraints.hpp"
#include "reground/scene.hpp"

namespace reground::testutil {

inline const char* kKitchenScene = "fixtures/kitchen_scene.json";
inline const char* kStorageScene = "fixtures/storage_scene.json";
inline const char* kGoldSet = "fixtures/gold_set.json";
inline const char* kTranscript = "fixtures/paper.transcript";

// Random scene on a coarse grid: distinct cells keep distances well
// separated except for the deliberate symmetric ties the grid produces,
// which both resolver paths must handle identically.
inline SceneModel make_random_scene(std::mt19937& rng, int max_objects = 20,
                                    bool second_viewpoint = false) {
  static const std::vector<std::string> categories = {"Cabinet", "Drawer", "Shelf", "Lamp",
                                                      "Box"};
  std::uniform_int_distribution<int> count_dist(1, max_objects);
  std::uniform_int_distribution<int> xy_dist(0, 12);
  std::uniform_int_distribution<int> z_dist(0, 8);
  std::uniform_int_distribution<std::size_t> cat_dist(0, categories.size() - 1);

  int n = count_dist(rng);
  std::set<std::tuple<int, int, int>> used;
  std::vector<ObjectRecord> objects;
  for (int i = 0; i < n; ++i) {
    int gx, gy, gz;
    do {
      gx = xy_dist(rng);
      gy = xy_dist(rng);
      gz = z_dist(rng);
    } while (!used.insert({gx, gy, gz}).second);
    ObjectRecord o;
    o.category = categories[cat_dist(rng)];
    o.id = o.category + std::to_string(i + 1);
    o.position = {gx * 0.25, gy * 0.25, gz * 0.25};
    o.bbox = {{o.position.x - 0.1, o.position.y - 0.1, o.position.z - 0.1},
              {o.position.x + 0.1, o.position.y + 0.1, o.position.z + 0.1}};
    objects.push_back(std::move(o));
  }
  std::vector<Viewpoint> viewpoints;
  static const std::vector<Vec3> facings = {{0, -1, 0}, {0, 1, 0}, {-1, 0, 0}, {1, 0, 0}};
  std::uniform_int_distribution<std::size_t> face_dist(0, facings.size() - 1);
  viewpoints.push_back({"main", {1.5, 4.0, 1.0}, facings[face_dist(rng)]});
  if (second_viewpoint) viewpoints.push_back({"other", {4.0, 1.5, 1.0}, facings[face_dist(rng)]});
  return SceneModel(std::move(objects), std::move(viewpoints), 1.0);
}

// Random query of anchor depth <= 2 over the generator's category pool.
inline Query make_random_query(std::mt19937& rng, int depth = 1) {
  static const std::vector<std::string> categories = {"Cabinet", "Drawer", "Shelf", "Lamp",
                                                      "Box"};
  static const std::vector<QueryRel> rels = {QueryRel::LeftOf, QueryRel::RightOf,
                                             QueryRel::Above, QueryRel::Below, QueryRel::NextTo};
  std::uniform_int_distribution<std::size_t> cat_dist(0, categories.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> pct(0, 99);

  Query q;
  q.constraints.push_back(CategoryConstraint{categories[cat_dist(rng)]});
  if (pct(rng) < 25) q.constraints.push_back(BandConstraint{coin(rng) ? Band::High : Band::Low});
  if (depth < 2 && pct(rng) < 70) {
    std::uniform_int_distribution<std::size_t> rel_dist(0, rels.size() - 1);
    RelConstraint rel;
    rel.rel = rels[rel_dist(rng)];
    rel.anchor = std::make_shared<Query>(make_random_query(rng, depth + 1));
    rel.ordinal = pct(rng) < 30 ? 1 + pct(rng) % 3 : 0;
    q.constraints.push_back(std::move(rel));
  }
  if (pct(rng) < 20) {
    std::uniform_int_distribution<int> stack_dist(0, 3);
    int kind = stack_dist(rng);
    StackConstraint sc;
    sc.kind = kind == 0   ? StackKind::Top
              : kind == 1 ? StackKind::Middle
              : kind == 2 ? StackKind::Bottom
                          : StackKind::NthFromTop;
    if (sc.kind == StackKind::NthFromTop) sc.n = 1 + pct(rng) % 3;
    q.constraints.push_back(sc);
  }
  return q;
}

}  // namespace reground::testutil
