#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reground/scene.hpp"

namespace reground {

// Directional relations in the observer's frame. Lateral and vertical pairs
// are mutual inverses; Front/Behind cover the depth axis so every dominant
// displacement maps to exactly one relation.
enum class Relation { Left, Right, Above, Below, Front, Behind };

constexpr std::array<Relation, 6> kAllRelations = {
    Relation::Left, Relation::Right, Relation::Above,
    Relation::Below, Relation::Front, Relation::Behind};

Relation inverse(Relation r);
std::string relation_name(Relation r);          // "left", "right", ...
std::string relation_axis_key(Relation r);      // "+x", "-x", "+z", ...

enum class GraphEncoding { Language, SignedAxis, CardinalJson };

struct NeighborEntry {
  std::string id;
  double dist2 = 0.0;
};

// Directional adjacency for one viewpoint. Edge lists hold every object
// whose displacement is dominated by that axis, nearest first, so the
// inverse-pair invariant holds on the full lists. The nearest entries (ties
// included) form the "primary" front used by rendering and chain walks.
class NeighborGraph {
 public:
  NeighborGraph() = default;
  NeighborGraph(Viewpoint viewpoint, std::vector<std::string> ordered_ids,
                std::map<std::string, std::array<std::vector<NeighborEntry>, 6>> edges);

  const Viewpoint& viewpoint() const { return viewpoint_; }
  const std::vector<std::string>& ordered_ids() const { return ordered_ids_; }

  const std::vector<NeighborEntry>& edge_list(const std::string& id, Relation r) const;

  // All entries tied with the nearest neighbor in that direction.
  std::vector<std::string> tie_front(const std::string& id, Relation r) const;

  // Derived symmetric lateral adjacency: B is next to A if either appears in
  // the other's nearest lateral front.
  std::set<std::string> next_to(const std::string& id) const;

  // Directions where the nearest distance is shared by several objects.
  const std::vector<std::string>& diagnostics() const { return diagnostics_; }

 private:
  Viewpoint viewpoint_;
  std::vector<std::string> ordered_ids_;
  std::map<std::string, std::array<std::vector<NeighborEntry>, 6>> edges_;
  std::vector<std::string> diagnostics_;
};

// Distances within this tolerance of the minimum count as tied.
inline constexpr double kTieEpsilon = 1e-9;

// Axis-dominance classification of the displacement from `from` to `to` in
// the viewpoint frame; nullopt when no axis strictly dominates.
std::optional<Relation> classify_displacement(const Vec3& displacement, const Viewpoint& vp);

NeighborGraph build_graph(const SceneModel& scene, const std::string& viewpoint);

std::string render_graph(const NeighborGraph& graph, GraphEncoding encoding);

// Follows the nearest-neighbor edge of `rel` k times; k = 0 returns start.
std::string chain_walk(const NeighborGraph& graph, const std::string& start, Relation rel,
                       int k);

// Compass letter ("N", "S", "E", "W", "U", "D") for a relation as seen from
// the given viewpoint, derived from the pose's facing vector.
std::string cardinal_label(Relation r, const Viewpoint& vp);

}  // namespace reground
