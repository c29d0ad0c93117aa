#pragma once

#include <string>
#include <vector>

#include "reground/constraints.hpp"
#include "reground/neighbor_graph.hpp"
#include "reground/scene.hpp"

namespace reground {

struct GroundingResult {
  std::vector<std::string> matches;  // best first
  bool ambiguous = false;            // more than one equally ranked match
  std::vector<std::string> trace;    // one line per filter step
};

// Executes the query's logical operations against the scene and a prebuilt
// neighbor graph. Throws UnresolvableError when a Rel anchor matches nothing.
GroundingResult resolve(const Query& query, const SceneModel& scene,
                        const NeighborGraph& graph);

// Same semantics computed by exhaustive enumeration straight from geometry,
// without a NeighborGraph. Test oracle; scenes up to 50 objects.
GroundingResult brute_oracle(const Query& query, const SceneModel& scene,
                             const std::string& viewpoint);

}  // namespace reground
