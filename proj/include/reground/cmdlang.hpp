#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "reground/scene.hpp"

namespace reground {

enum class Verb {
  PickUp,
  PutDownIn,
  PutDownOn,
  GoTo,
  TurnOn,
  TurnOff,
  WaitFor,
  WaitUntil,
  Stir,
  PourInto,
  CrackInto,
  Serve,
};

struct ActionCommand {
  Verb verb;
  std::vector<std::string> args;  // 1 or 2, per verb arity
  bool optional_flag = false;     // source line began "(Optional)"

  bool operator==(const ActionCommand& o) const {
    return verb == o.verb && args == o.args && optional_flag == o.optional_flag;
  }
};

struct VerbSpec {
  Verb verb;
  std::string name;           // "PickUp"
  std::string template_line;  // "Pick up <object>."
  int arity = 1;
  std::vector<std::string> preconditions;
  std::vector<std::string> effects;
};

// A WaitUntil condition the executor can model. The condition becomes true
// `delay` ticks after its device is on and (when set) `subject` has been
// placed in `container`.
struct ConditionSpec {
  std::string text;  // "butter is melted"
  std::string device;
  std::string subject;
  std::string container;
  int delay = 1;
  std::string flag;  // state flag set when reached: "melted", "cooked", "warm"
};

struct VerbTable {
  std::vector<VerbSpec> verbs;
  std::vector<ConditionSpec> conditions;

  const VerbSpec& spec(Verb v) const;
  const ConditionSpec* condition(const std::string& text) const;
};

VerbTable builtin_verb_table();
VerbTable load_verb_table(const std::string& path);

int verb_arity(Verb v);
std::string verb_name(Verb v);

ActionCommand parse_command(const std::string& line);

// Canonical text; parse_command(print_command(c)) == c.
std::string print_command(const ActionCommand& cmd);

// One command per non-blank line.
std::vector<ActionCommand> parse_program(std::istream& in);
std::vector<ActionCommand> parse_program_file(const std::string& path);

struct ValidationFinding {
  int line = 0;  // 1-based command index
  bool hard = false;
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationFinding> findings;

  int hard_errors() const;
  int warnings() const;
};

// Static checks: unknown nouns (not a scene category and not a declared
// ingredient), hold/put sequencing, unmodeled WaitUntil conditions.
ValidationReport validate_program(const std::vector<ActionCommand>& cmds, const SceneModel& scene,
                                  const VerbTable& table = builtin_verb_table(),
                                  const std::vector<std::string>& ingredients = {});

}  // namespace reground
