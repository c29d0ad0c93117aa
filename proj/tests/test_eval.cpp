#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "helpers.hpp"
#include "reground/errors.hpp"
#include "reground/eval.hpp"
#include "reground/neighbor_graph.hpp"

using namespace reground;
using namespace reground::testutil;

namespace {

// Table of recorded grounding answers, kept in the test as the counting
// oracle for the replay accuracies.
const std::map<char, std::array<int, 10>> kRecorded = {
    {'A', {14, 8, 30, 29, 27, 9, 12, 24, 31, 7}},
    {'B', {14, 8, 30, 29, 23, 13, 12, 24, 31, 8}},
    {'C', {15, 7, 30, 29, 27, 9, 12, 26, 31, 8}},
    {'D', {15, 7, 30, 29, 23, 9, 12, 26, 31, 8}},
    {'E', {14, 7, 30, 29, 27, 9, 12, 26, 31, 8}},
    {'F', {15, 7, 30, 29, 27, 9, 12, 26, 31, 8}},
    {'G', {14, 8, 30, 29, 23, 13, 12, 28, 31, 14}},
    {'H', {14, 8, 30, 29, 23, 13, 12, 24, 27, 7}},
};

const std::array<int, 10> kCorrect = {14, 8, 30, 29, 23, 9, 12, 26, 31, 7};

}  // namespace

TEST_SUITE("eval") {

TEST_CASE("difficulty totals for sampled cells") {
  GoldSet gold = load_gold_set(kGoldSet);
  CHECK(gold.difficulty.total(5, 'G') == 14);
  CHECK(gold.difficulty.total(7, 'B') == 5);
  CHECK(gold.difficulty.total(1, 'A') == 8);
  CHECK_THROWS_AS(gold.difficulty.total(11, 'A'), Error);
  CHECK_THROWS_AS(gold.difficulty.total(1, 'Z'), Error);
}

TEST_CASE("replayed variants score like the counting oracle") {
  SceneModel scene = load_scene_file(kKitchenScene);
  GoldSet gold = load_gold_set(kGoldSet);
  CompletionClient client = CompletionClient::replay(kTranscript);
  for (const auto& [label, answers] : kRecorded) {
    VariantResult result = run_variant(variant_by_label(label), scene, client, gold);
    REQUIRE_FALSE(result.incomplete);
    int expected_hits = 0;
    for (int i = 0; i < 10; ++i) expected_hits += answers[i] == kCorrect[i] ? 1 : 0;
    VariantScore s = score(result, gold);
    CHECK_MESSAGE(s.hits == expected_hits, "variant ", label);
    CHECK(s.hits == gold.expected_replay_hits.at(label));
  }
}

TEST_CASE("a replay of the correct column scores ten out of ten") {
  SceneModel scene = load_scene_file(kKitchenScene);
  GoldSet gold = load_gold_set(kGoldSet);
  NeighborGraph graph = build_graph(scene, "LookingSouth");

  std::vector<std::string> res;
  for (const auto& e : gold.entries) res.push_back(e.text);
  PromptDoc prompt = build_grounding_prompt(scene, graph, variant_by_label('A'), res);

  std::string response;
  for (std::size_t i = 0; i < gold.entries.size(); ++i) {
    std::string id;
    for (const auto& o : scene.objects())
      if (id_suffix(o.id).text == gold.entries[i].correct) id = o.id;
    response += gold.entries[i].text + " → " + id + "\n";
  }
  auto path = std::filesystem::temp_directory_path() /
              ("reground_perfect_" + std::to_string(std::rand()) + ".transcript");
  Transcript::append(path.string(), {prompt.inputs_digest, prompt.text, response, ""});
  CompletionClient client = CompletionClient::replay(path.string());
  VariantResult result = run_variant(variant_by_label('A'), scene, client, gold);
  CHECK(score(result, gold).hits == 10);
  std::filesystem::remove(path);
}

TEST_CASE("missing transcript entries mark the variant incomplete") {
  SceneModel scene = load_scene_file(kKitchenScene);
  GoldSet gold = load_gold_set(kGoldSet);
  auto path = std::filesystem::temp_directory_path() /
              ("reground_empty_" + std::to_string(std::rand()) + ".transcript");
  Transcript::append(path.string(), {"ffffffffffffffff", "p", "r", ""});
  CompletionClient client = CompletionClient::replay(path.string());
  VariantResult result = run_variant(variant_by_label('A'), scene, client, gold);
  CHECK(result.incomplete);
  std::filesystem::remove(path);
}

TEST_CASE("multi-id predictions are misses but flagged") {
  GoldSet gold = load_gold_set(kGoldSet);
  VariantResult result;
  result.label = 'A';
  result.predictions.assign(10, {});
  result.unparsed.assign(10, false);
  result.predictions[0] = {"Cabinet14", "Cabinet7"};  // correct id among them
  for (int i = 1; i < 10; ++i) result.predictions[i] = {"Cabinet14"};
  VariantScore s = score(result, gold);
  CHECK_FALSE(s.rows[0].hit);
  CHECK(s.rows[0].multi);
  CHECK(s.hits == 0);  // only RE1 has 14 as the correct answer
}

TEST_CASE("score ignores prediction order inside a line") {
  GoldSet gold = load_gold_set(kGoldSet);
  VariantResult a, b;
  a.label = b.label = 'A';
  a.predictions.assign(10, {});
  b.predictions.assign(10, {});
  a.unparsed.assign(10, false);
  b.unparsed.assign(10, false);
  a.predictions[3] = {"Drawer29", "Drawer23"};
  b.predictions[3] = {"Drawer23", "Drawer29"};
  VariantScore sa = score(a, gold);
  VariantScore sb = score(b, gold);
  CHECK(sa.rows[3].hit == sb.rows[3].hit);
  CHECK(sa.rows[3].multi == sb.rows[3].multi);
}

TEST_CASE("anonymized answers score through suffix comparison") {
  GoldSet gold = load_gold_set(kGoldSet);
  VariantResult result;
  result.label = 'G';
  result.predictions.assign(10, {});
  result.unparsed.assign(10, false);
  result.predictions[0] = {"Object14"};
  VariantScore s = score(result, gold);
  CHECK(s.rows[0].hit);
}

TEST_CASE("the report has one row per expression and variant") {
  SceneModel scene = load_scene_file(kKitchenScene);
  GoldSet gold = load_gold_set(kGoldSet);
  CompletionClient client = CompletionClient::replay(kTranscript);

  std::vector<VariantResult> results = run_variants(all_variants(), scene, client, gold);
  EvalReport report = emit_report(results, gold);
  std::size_t rows = std::count(report.csv.begin(), report.csv.end(), '\n');
  CHECK(rows == 80 + 1);  // header included

  VariantResult single = run_variant(variant_by_label('A'), scene, client, gold);
  EvalReport one = emit_report({single}, gold);
  CHECK(std::count(one.csv.begin(), one.csv.end(), '\n') == 10 + 1);
}

TEST_CASE("replay reports are byte identical across runs") {
  SceneModel scene = load_scene_file(kKitchenScene);
  GoldSet gold = load_gold_set(kGoldSet);
  CompletionClient client = CompletionClient::replay(kTranscript);
  EvalReport r1 = emit_report(run_variants(all_variants(), scene, client, gold), gold);
  EvalReport r2 = emit_report(run_variants(all_variants(), scene, client, gold), gold);
  CHECK(r1.csv == r2.csv);
  CHECK(r1.summary == r2.summary);
}

TEST_CASE("threshold analysis joins misses with difficulty totals") {
  SceneModel scene = load_scene_file(kKitchenScene);
  GoldSet gold = load_gold_set(kGoldSet);
  CompletionClient client = CompletionClient::replay(kTranscript);
  EvalReport report = emit_report(run_variants(all_variants(), scene, client, gold), gold);

  // Counting oracle: join the recorded answers with the difficulty model.
  int misses = 0, hard_misses = 0;
  for (const auto& [label, answers] : kRecorded) {
    for (int i = 0; i < 10; ++i) {
      if (answers[i] == kCorrect[i]) continue;
      ++misses;
      if (gold.difficulty.total(i + 1, label) >= gold.difficulty.failure_threshold)
        ++hard_misses;
    }
  }
  CHECK(misses == 25);
  CHECK(hard_misses == 19);
  CHECK(report.summary.find("total misses: " + std::to_string(misses)) != std::string::npos);
  CHECK(report.summary.find("misses at difficulty >= 10: " + std::to_string(hard_misses)) !=
        std::string::npos);
}

}  // TEST_SUITE
