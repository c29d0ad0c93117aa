#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "reground/completion.hpp"
#include "reground/prompts.hpp"
#include "reground/scene.hpp"

namespace reground {

struct GoldEntry {
  int re_id = 0;           // 1..10
  std::string text;        // referring expression, verbatim
  std::string challenges;  // comma-separated tags
  std::string correct;     // numeric suffix of the correct object
  std::string dsl;         // hand-written constraint query
};

// Additive difficulty estimate: points for the expression plus points for
// the prompt variant. Stored as data so weightings can be swapped.
struct DifficultyModel {
  std::array<int, 10> re_base{};
  std::map<char, int> variant_bonus;
  int failure_threshold = 10;

  int total(int re_id, char variant) const;
};

struct GoldSet {
  std::vector<GoldEntry> entries;  // exactly 10
  DifficultyModel difficulty;
  std::map<char, int> expected_replay_hits;  // per variant, for --check runs
};

GoldSet load_gold_set(const std::string& path);

struct VariantResult {
  char label = 'A';
  std::vector<std::vector<std::string>> predictions;  // aligned to gold entries
  std::vector<bool> unparsed;                         // per entry
  bool incomplete = false;  // response missing or unusable; run continues
  std::string raw_response;
};

// Builds the variant prompt over all gold expressions in one request, runs
// the client, and aligns answers to entries by order with a text-match
// fallback.
VariantResult run_variant(const PromptVariant& variant, const SceneModel& scene,
                          const CompletionClient& client, const GoldSet& gold);

// Concurrent fan-out over variants; results return in label order.
std::vector<VariantResult> run_variants(const std::vector<PromptVariant>& variants,
                                        const SceneModel& scene, const CompletionClient& client,
                                        const GoldSet& gold);

struct ScoreRow {
  int re_id = 0;
  bool hit = false;
  bool multi = false;  // several ids predicted; counted as a miss
};

struct VariantScore {
  char label = 'A';
  std::vector<ScoreRow> rows;
  int hits = 0;
};

// Hit iff the prediction is exactly the one correct object (compared by
// numeric suffix, so anonymized answers score the same).
VariantScore score(const VariantResult& result, const GoldSet& gold);

struct EvalReport {
  std::string csv;      // one row per RE x variant, RE-major
  std::string summary;  // per-variant accuracy + threshold analysis
  std::vector<VariantScore> scores;
};

EvalReport emit_report(const std::vector<VariantResult>& results, const GoldSet& gold);

// Writes report.csv and summary.txt under out_dir.
void write_report(const EvalReport& report, const std::string& out_dir);

}  // namespace reground
