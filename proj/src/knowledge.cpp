#include "reground/knowledge.hpp"

#include <algorithm>
#include <fstream>

#include "json.hpp"
#include "reground/errors.hpp"

namespace reground {

using nlohmann::json;

std::string provenance_name(Provenance p) {
  switch (p) {
    case Provenance::Human: return "Human";
    case Provenance::LLM: return "LLM";
    case Provenance::Observed: return "Observed";
  }
  throw Error("bad provenance");
}

Provenance provenance_from(const std::string& name) {
  if (name == "Human") return Provenance::Human;
  if (name == "LLM") return Provenance::LLM;
  if (name == "Observed") return Provenance::Observed;
  throw FormatError("unknown provenance " + name);
}

FactStore FactStore::load(const std::string& path) {
  FactStore store;
  store.journal_path_ = path;
  std::ifstream in(path);
  if (!in) return store;  // fresh store; file appears on first add
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw FormatError("fact journal " + path + " line " + std::to_string(line_no) + ": " +
                        e.what());
    }
    FactAssertion a;
    a.object = j.at("object").get<std::string>();
    a.key = j.at("key").get<std::string>();
    a.value = j.at("value").get<std::string>();
    a.provenance = provenance_from(j.value("provenance", "LLM"));
    a.confirmed = j.value("confirmed", false);
    // Replaying the journal applies supersedence the same way add() does,
    // but never appends back to the file.
    std::string saved = store.journal_path_;
    store.journal_path_.clear();
    store.add(a, true);
    store.journal_path_ = saved;
  }
  return store;
}

namespace {

json to_json(const FactAssertion& a) {
  return json{{"object", a.object},
              {"key", a.key},
              {"value", a.value},
              {"provenance", provenance_name(a.provenance)},
              {"confirmed", a.confirmed}};
}

}  // namespace

void FactStore::save(const std::string& path) const {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw Error("cannot write fact store " + path);
  for (const auto& a : assertions_) out << to_json(a).dump() << "\n";
}

void FactStore::compact() {
  if (journal_path_.empty()) return;
  save(journal_path_);
}

void FactStore::add(const FactAssertion& a, bool override_confirmed) {
  if (a.confirmed) {
    for (const auto& existing : assertions_) {
      if (existing.object == a.object && existing.key == a.key && existing.confirmed &&
          existing.value != a.value && !override_confirmed)
        throw Error("confirmed fact (" + a.object + ", " + a.key + ") = " + existing.value +
                    " already exists; pass override to replace");
    }
    // A confirmed value supersedes everything else for this (object, key).
    std::erase_if(assertions_, [&](const FactAssertion& e) {
      return e.object == a.object && e.key == a.key && e.value != a.value;
    });
    // Collapse a matching unconfirmed assertion into the confirmed one.
    std::erase_if(assertions_, [&](const FactAssertion& e) {
      return e.object == a.object && e.key == a.key && e.value == a.value;
    });
  } else {
    // Duplicate unconfirmed assertions collapse; a confirmed one wins.
    for (const auto& existing : assertions_) {
      if (existing.object == a.object && existing.key == a.key && existing.value == a.value)
        return;
    }
  }
  assertions_.push_back(a);
  if (!journal_path_.empty()) {
    std::ofstream out(journal_path_, std::ios::app);
    if (!out) throw Error("cannot append to fact journal " + journal_path_);
    out << to_json(a).dump() << "\n";
  }
}

std::vector<FactAssertion> FactStore::facts_for(const std::string& object,
                                                const std::string& key) const {
  std::vector<FactAssertion> out;
  for (const auto& a : assertions_)
    if (a.object == object && a.key == key) out.push_back(a);
  return out;
}

std::optional<FactAssertion> FactStore::confirmed_fact(const std::string& object,
                                                       const std::string& key) const {
  for (const auto& a : assertions_)
    if (a.object == object && a.key == key && a.confirmed) return a;
  return std::nullopt;
}

Verdict verify_suggestion(const StorageSuggestion& s, const FactStore& store,
                          const SceneModel& scene) {
  if (s.objects.empty() || s.locations.empty())
    throw Error("suggestion for '" + s.re_text + "' missing objects or locations");
  for (const auto& id : s.objects)
    if (!scene.has_object(id)) throw Error("suggestion names unknown object " + id);
  for (const auto& id : s.locations)
    if (!scene.has_object(id)) throw Error("suggestion names unknown location " + id);

  bool all_matched = true;
  for (const auto& obj : s.objects) {
    auto fact = store.confirmed_fact(obj, kStorageKey);
    if (!fact) {
      all_matched = false;
      continue;
    }
    bool matches = std::find(s.locations.begin(), s.locations.end(), fact->value) !=
                   s.locations.end();
    if (!matches) {
      return Verdict{VerdictKind::Reject,
                     "confirmed fact says " + obj + " is stored at " + fact->value +
                         ", not at any suggested location",
                     *fact};
    }
  }
  if (all_matched)
    return Verdict{VerdictKind::Accept, "all objects have confirmed matching storage facts",
                   std::nullopt};
  return Verdict{VerdictKind::NeedsConfirmation,
                 "no confirmed storage fact for at least one object; ask the human",
                 std::nullopt};
}

FactStore commit_fact(FactStore store, const StorageSuggestion& s, bool confirmation,
                      bool override_confirmed) {
  if (s.objects.empty() || s.locations.empty())
    throw Error("cannot commit empty suggestion for '" + s.re_text + "'");
  for (const auto& obj : s.objects) {
    FactAssertion a;
    a.object = obj;
    a.key = kStorageKey;
    a.value = s.locations.front();
    a.provenance = Provenance::LLM;
    a.confirmed = confirmation;
    store.add(a, override_confirmed);
  }
  return store;
}

GroundingResult resolve_functional(const std::string& category, const std::string& fact_key,
                                   const std::string& fact_value, const SceneModel& scene,
                                   const FactStore& store) {
  GroundingResult result;
  result.trace.push_back("functional lookup: category " + category + ", " + fact_key + "=" +
                         fact_value);
  for (const auto& o : scene.objects()) {
    if (o.category != category) continue;
    auto fact = store.confirmed_fact(o.id, fact_key);
    if (fact && fact->value == fact_value) result.matches.push_back(o.id);
  }
  result.ambiguous = result.matches.size() > 1;
  if (result.matches.empty())
    result.trace.push_back("unresolvable: needs human instruction");
  return result;
}

}  // namespace reground
