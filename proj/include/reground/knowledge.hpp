#pragma once

#include <optional>
#include <string>
#include <vector>

#include "reground/resolver.hpp"
#include "reground/scene.hpp"

namespace reground {

// One parsed storage recommendation: store `objects` at any of `locations`.
struct StorageSuggestion {
  std::string re_text;
  std::vector<std::string> objects;
  std::vector<std::string> locations;
  std::optional<int> type_class;  // 1..6 when the response grouped it

  bool operator==(const StorageSuggestion& o) const {
    return re_text == o.re_text && objects == o.objects && locations == o.locations &&
           type_class == o.type_class;
  }
};

enum class Provenance { Human, LLM, Observed };

std::string provenance_name(Provenance p);
Provenance provenance_from(const std::string& name);

struct FactAssertion {
  std::string object;
  std::string key;
  std::string value;
  Provenance provenance = Provenance::LLM;
  bool confirmed = false;
};

// Situational-knowledge store. At most one confirmed value per (object, key);
// persists as an append-only journal with explicit compaction.
class FactStore {
 public:
  FactStore() = default;

  static FactStore load(const std::string& path);
  void save(const std::string& path) const;  // compacted rewrite

  // Appends in memory and, when a journal is attached, to the file.
  // Overwriting a confirmed value with a different confirmed value requires
  // `override_confirmed`; committing a confirmed value drops conflicting
  // unconfirmed ones.
  void add(const FactAssertion& a, bool override_confirmed = false);

  void attach_journal(const std::string& path) { journal_path_ = path; }
  void compact();  // rewrite the attached journal to current contents

  const std::vector<FactAssertion>& assertions() const { return assertions_; }
  std::vector<FactAssertion> facts_for(const std::string& object, const std::string& key) const;
  std::optional<FactAssertion> confirmed_fact(const std::string& object,
                                              const std::string& key) const;

 private:
  std::vector<FactAssertion> assertions_;
  std::string journal_path_;
};

enum class VerdictKind { Accept, NeedsConfirmation, Reject };

struct Verdict {
  VerdictKind kind;
  std::string reason;
  std::optional<FactAssertion> conflict;  // always set for Reject
};

inline constexpr const char* kStorageKey = "storage";

// Accept when every suggested object already has a confirmed matching
// storage fact; Reject when any has a confirmed conflicting one.
Verdict verify_suggestion(const StorageSuggestion& s, const FactStore& store,
                          const SceneModel& scene);

// Records the suggestion as LLM-provided facts (first listed location).
FactStore commit_fact(FactStore store, const StorageSuggestion& s, bool confirmation,
                      bool override_confirmed = false);

// Grounds a functional reference ("the silverware drawer") against confirmed
// facts. Empty matches are reported in the trace, not thrown.
GroundingResult resolve_functional(const std::string& category, const std::string& fact_key,
                                   const std::string& fact_value, const SceneModel& scene,
                                   const FactStore& store);

}  // namespace reground
