// Regenerates the recorded transcript and the golden prompt files from the
// checked-in scenes. Run from the repository root:
//
//   ./build/genfixtures
//
// The transcript encodes the answers recorded for the eight prompt variants
// plus the storage and recipe-simplification responses, keyed by prompt
// digest, so every pipeline replays offline.

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "reground/cmdlang.hpp"
#include "reground/errors.hpp"
#include "reground/completion.hpp"
#include "reground/eval.hpp"
#include "reground/neighbor_graph.hpp"
#include "reground/prompts.hpp"
#include "reground/scene.hpp"

using namespace reground;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) lines.push_back(line);
  return lines;
}

// Recorded grounding answers per variant (numeric id per expression).
const std::map<char, std::array<int, 10>> kRecordedAnswers = {
    {'A', {14, 8, 30, 29, 27, 9, 12, 24, 31, 7}},
    {'B', {14, 8, 30, 29, 23, 13, 12, 24, 31, 8}},
    {'C', {15, 7, 30, 29, 27, 9, 12, 26, 31, 8}},
    {'D', {15, 7, 30, 29, 23, 9, 12, 26, 31, 8}},
    {'E', {14, 7, 30, 29, 27, 9, 12, 26, 31, 8}},
    {'F', {15, 7, 30, 29, 27, 9, 12, 26, 31, 8}},
    {'G', {14, 8, 30, 29, 23, 13, 12, 28, 31, 14}},
    {'H', {14, 8, 30, 29, 23, 13, 12, 24, 27, 7}},
};

std::string answer_id(const SceneModel& scene, int number, bool anonymized) {
  if (anonymized) return "Object" + std::to_string(number);
  for (const auto& o : scene.objects())
    if (id_suffix(o.id).text == std::to_string(number)) return o.id;
  throw Error("no object with suffix " + std::to_string(number));
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  std::cout << "wrote " << path << "\n";
}

}  // namespace

int main() {
  try {
    SceneModel kitchen = load_scene_file("fixtures/kitchen_scene.json");
    SceneModel storage = load_scene_file("fixtures/storage_scene.json");
    GoldSet gold = load_gold_set("fixtures/gold_set.json");
    NeighborGraph graph = build_graph(kitchen, "LookingSouth");

    std::vector<std::string> res;
    for (const auto& e : gold.entries) res.push_back(e.text);

    const std::string transcript_path = "fixtures/paper.transcript";
    {
      std::ofstream truncate(transcript_path, std::ios::trunc);
    }

    for (const auto& variant : all_variants()) {
      PromptDoc prompt = build_grounding_prompt(kitchen, graph, variant, res);
      bool anonymized = variant.id_style == IdStyle::Anonymized;
      std::ostringstream response;
      const auto& answers = kRecordedAnswers.at(variant.label);
      for (std::size_t i = 0; i < gold.entries.size(); ++i) {
        response << gold.entries[i].text << " → "
                 << answer_id(kitchen, answers[i], anonymized) << "\n";
      }
      Transcript::append(transcript_path,
                         {prompt.inputs_digest, prompt.text, response.str(), ""});
      if (variant.label == 'A' || variant.label == 'E' || variant.label == 'H')
        write_file(std::string("fixtures/golden/prompt_") + variant.label + ".txt",
                   prompt.text);
    }

    std::vector<std::string> type_classes = read_lines("fixtures/storage_types.txt");
    std::vector<std::string> storage_queries = read_lines("fixtures/storage_queries.txt");
    PromptDoc storage_prompt = build_storage_prompt(storage, type_classes, storage_queries);
    Transcript::append(transcript_path, {storage_prompt.inputs_digest, storage_prompt.text,
                                         slurp("fixtures/storage_response.txt"), ""});
    write_file("fixtures/golden/storage_prompt.txt", storage_prompt.text);

    PromptDoc simplify_prompt =
        build_simplify_prompt(load_verb_table("fixtures/verbs.json"),
                              slurp("fixtures/scrambled_eggs.txt"));
    Transcript::append(transcript_path, {simplify_prompt.inputs_digest, simplify_prompt.text,
                                         slurp("fixtures/scrambled_eggs.cmds"), ""});
    write_file("fixtures/golden/simplify_prompt.txt", simplify_prompt.text);

    std::cout << "wrote " << transcript_path << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "genfixtures: " << e.what() << "\n";
    return 1;
  }
}
