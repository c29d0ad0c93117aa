#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reground/cmdlang.hpp"
#include "reground/neighbor_graph.hpp"
#include "reground/scene.hpp"

namespace reground {

enum class PromptKind { Grounding, Storage, Simplify };

// One of the eight grounding-prompt configurations (category-list style x
// graph encoding x explanatory note).
struct PromptVariant {
  char label = 'A';
  std::optional<IdStyle> id_style;  // nullopt: no category list
  GraphEncoding encoding = GraphEncoding::Language;
  std::string explanation;
  bool dual_viewpoint = false;
};

// The preset table for labels A..H.
PromptVariant variant_by_label(char label);
std::vector<PromptVariant> all_variants();

struct PromptDoc {
  std::string text;
  PromptKind kind = PromptKind::Grounding;
  std::string inputs_digest;  // content hash of text
};

PromptDoc build_grounding_prompt(const SceneModel& scene, const NeighborGraph& graph,
                                 const PromptVariant& variant,
                                 const std::vector<std::string>& res);

PromptDoc build_storage_prompt(const SceneModel& scene,
                               const std::vector<std::string>& type_classes,
                               const std::vector<std::string>& res);

PromptDoc build_simplify_prompt(const VerbTable& verbs, const std::string& steps_text);

}  // namespace reground
