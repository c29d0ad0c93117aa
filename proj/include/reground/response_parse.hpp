#pragma once

#include <set>
#include <string>
#include <vector>

#include "reground/knowledge.hpp"
#include "reground/scene.hpp"

namespace reground {

// One response line from the grounding prompt. Lines in answer position that
// carry no recognizable id are kept with `unparsed` set rather than dropped.
struct GroundingLine {
  std::string re_text;
  std::vector<std::string> ids;
  bool unparsed = false;
};

// Lenient on separators ("->", ":", "-"), strict on id vocabulary: only
// tokens from `known_ids` ever appear in the output. Preamble lines with no
// separator and no known id are skipped.
std::vector<GroundingLine> parse_grounding_response(const std::string& text,
                                                    const std::set<std::string>& known_ids);

struct StorageParse {
  std::vector<StorageSuggestion> suggestions;
  std::vector<std::string> unparsed;  // suggestion-shaped lines that failed
};

// Parses storage suggestions in the "re -> objects -> locations (gloss)"
// shape, expanding "objectA-objectB" ranges by numeric suffix and carrying
// the surrounding "Type N:" class when present.
StorageParse parse_storage_response(const std::string& text, const SceneModel& scene);

}  // namespace reground
