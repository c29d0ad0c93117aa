#include "reground/eval.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include "json.hpp"
#include "reground/errors.hpp"
#include "reground/neighbor_graph.hpp"
#include "reground/response_parse.hpp"

namespace reground {

using nlohmann::json;

int DifficultyModel::total(int re_id, char variant) const {
  if (re_id < 1 || re_id > static_cast<int>(re_base.size()))
    throw Error("re_id out of range: " + std::to_string(re_id));
  auto it = variant_bonus.find(variant);
  if (it == variant_bonus.end())
    throw Error(std::string("unknown variant '") + variant + "'");
  return re_base[re_id - 1] + it->second;
}

GoldSet load_gold_set(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open gold set " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed gold set: ") + e.what());
  }
  GoldSet gold;
  for (const auto& je : j.at("entries")) {
    GoldEntry e;
    e.re_id = je.at("id").get<int>();
    e.text = je.at("text").get<std::string>();
    e.challenges = je.value("challenges", "");
    e.correct = je.at("correct").get<std::string>();
    e.dsl = je.value("dsl", "");
    gold.entries.push_back(std::move(e));
  }
  if (gold.entries.size() != 10) throw FormatError("gold set must have exactly 10 entries");
  const auto& jd = j.at("difficulty");
  auto base = jd.at("re_base").get<std::vector<int>>();
  if (base.size() != 10) throw FormatError("re_base must have 10 entries");
  std::copy(base.begin(), base.end(), gold.difficulty.re_base.begin());
  for (auto it = jd.at("variant_bonus").begin(); it != jd.at("variant_bonus").end(); ++it)
    gold.difficulty.variant_bonus[it.key()[0]] = it.value().get<int>();
  gold.difficulty.failure_threshold = jd.value("failure_threshold", 10);
  if (j.contains("expected_replay_hits"))
    for (auto it = j["expected_replay_hits"].begin(); it != j["expected_replay_hits"].end(); ++it)
      gold.expected_replay_hits[it.key()[0]] = it.value().get<int>();
  return gold;
}

namespace {

std::string normalize_re(const std::string& s) {
  std::string out;
  for (char c : s) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isalnum(u)) out += static_cast<char>(std::tolower(u));
    else if (std::isspace(u) && !out.empty() && out.back() != ' ') out += ' ';
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

std::set<std::string> known_id_vocabulary(const SceneModel& scene) {
  std::set<std::string> ids;
  for (const auto& o : scene.objects()) ids.insert(o.id);
  try {
    auto [anon, mapping] = anonymize(scene);
    for (const auto& o : anon.objects()) ids.insert(o.id);
  } catch (const Error&) {
    // Scene ids without numeric suffixes cannot be anonymized; plain ids
    // remain the vocabulary.
  }
  return ids;
}

}  // namespace

VariantResult run_variant(const PromptVariant& variant, const SceneModel& scene,
                          const CompletionClient& client, const GoldSet& gold) {
  VariantResult result;
  result.label = variant.label;
  result.predictions.assign(gold.entries.size(), {});
  result.unparsed.assign(gold.entries.size(), false);

  std::vector<std::string> res;
  for (const auto& e : gold.entries) res.push_back(e.text);

  NeighborGraph graph = build_graph(scene, scene.viewpoints().front().name);
  PromptDoc prompt = build_grounding_prompt(scene, graph, variant, res);
  std::string response;
  try {
    response = client.complete(prompt);
  } catch (const Error&) {
    result.incomplete = true;
    return result;
  }
  result.raw_response = response;

  auto lines = parse_grounding_response(response, known_id_vocabulary(scene));

  // Alignment: exact normalized text match first, then remaining lines fill
  // remaining expressions in order.
  std::vector<bool> entry_taken(gold.entries.size(), false);
  std::vector<bool> line_used(lines.size(), false);
  for (std::size_t li = 0; li < lines.size(); ++li) {
    std::string norm = normalize_re(lines[li].re_text);
    if (norm.empty()) continue;
    for (std::size_t ei = 0; ei < gold.entries.size(); ++ei) {
      if (entry_taken[ei]) continue;
      if (normalize_re(gold.entries[ei].text) == norm) {
        result.predictions[ei] = lines[li].ids;
        result.unparsed[ei] = lines[li].unparsed;
        entry_taken[ei] = true;
        line_used[li] = true;
        break;
      }
    }
  }
  std::size_t next_entry = 0;
  for (std::size_t li = 0; li < lines.size(); ++li) {
    if (line_used[li]) continue;
    while (next_entry < entry_taken.size() && entry_taken[next_entry]) ++next_entry;
    if (next_entry >= entry_taken.size()) break;
    result.predictions[next_entry] = lines[li].ids;
    result.unparsed[next_entry] = lines[li].unparsed;
    entry_taken[next_entry] = true;
  }
  return result;
}

std::vector<VariantResult> run_variants(const std::vector<PromptVariant>& variants,
                                        const SceneModel& scene, const CompletionClient& client,
                                        const GoldSet& gold) {
  std::vector<std::future<VariantResult>> futures;
  futures.reserve(variants.size());
  for (const auto& v : variants) {
    futures.push_back(std::async(std::launch::async, [&, v] {
      return run_variant(v, scene, client, gold);
    }));
  }
  std::vector<VariantResult> results;
  results.reserve(variants.size());
  for (auto& f : futures) results.push_back(f.get());
  std::sort(results.begin(), results.end(),
            [](const VariantResult& a, const VariantResult& b) { return a.label < b.label; });
  return results;
}

VariantScore score(const VariantResult& result, const GoldSet& gold) {
  VariantScore s;
  s.label = result.label;
  for (std::size_t i = 0; i < gold.entries.size(); ++i) {
    ScoreRow row;
    row.re_id = gold.entries[i].re_id;
    const auto& preds = result.predictions[i];
    row.multi = preds.size() > 1;
    row.hit = preds.size() == 1 && id_suffix(preds[0]).text == gold.entries[i].correct;
    s.hits += row.hit ? 1 : 0;
    s.rows.push_back(row);
  }
  return s;
}

EvalReport emit_report(const std::vector<VariantResult>& results, const GoldSet& gold) {
  if (results.empty()) throw Error("no variant results to report");
  EvalReport report;
  for (const auto& r : results) report.scores.push_back(score(r, gold));

  std::ostringstream csv;
  csv << "re_id,variant,predicted,correct,hit,multi,difficulty\n";
  for (std::size_t ei = 0; ei < gold.entries.size(); ++ei) {
    for (std::size_t vi = 0; vi < results.size(); ++vi) {
      const auto& r = results[vi];
      const auto& row = report.scores[vi].rows[ei];
      std::string preds;
      for (std::size_t k = 0; k < r.predictions[ei].size(); ++k) {
        if (k) preds += "|";
        preds += r.predictions[ei][k];
      }
      csv << gold.entries[ei].re_id << "," << r.label << "," << preds << ","
          << gold.entries[ei].correct << "," << (row.hit ? 1 : 0) << "," << (row.multi ? 1 : 0)
          << "," << gold.difficulty.total(gold.entries[ei].re_id, r.label) << "\n";
    }
  }
  report.csv = csv.str();

  int misses = 0, hard_misses = 0, hard_cells = 0;
  for (std::size_t vi = 0; vi < results.size(); ++vi) {
    for (const auto& row : report.scores[vi].rows) {
      int diff = gold.difficulty.total(row.re_id, results[vi].label);
      bool hard = diff >= gold.difficulty.failure_threshold;
      hard_cells += hard ? 1 : 0;
      if (!row.hit) {
        ++misses;
        hard_misses += hard ? 1 : 0;
      }
    }
  }

  std::ostringstream sum;
  sum << "grounding evaluation over " << results.size() << " variant(s)\n";
  for (const auto& s : report.scores)
    sum << "variant " << s.label << ": " << s.hits << "/" << gold.entries.size() << "\n";
  sum << "total misses: " << misses << "\n";
  sum << "cells at difficulty >= " << gold.difficulty.failure_threshold << ": " << hard_cells
      << "\n";
  sum << "misses at difficulty >= " << gold.difficulty.failure_threshold << ": " << hard_misses
      << "\n";
  report.summary = sum.str();
  return report;
}

void write_report(const EvalReport& report, const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out(out_dir + "/report.csv", std::ios::trunc);
    if (!out) throw Error("cannot write " + out_dir + "/report.csv");
    out << report.csv;
  }
  {
    std::ofstream out(out_dir + "/summary.txt", std::ios::trunc);
    if (!out) throw Error("cannot write " + out_dir + "/summary.txt");
    out << report.summary;
  }
}

}  // namespace reground
