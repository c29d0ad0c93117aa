#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "reground/cmdlang.hpp"

namespace reground {

// Minimal kitchen world state for running simplified recipe programs.
struct KitchenState {
  std::string location = "start";
  std::optional<std::string> holding;
  std::map<std::string, std::string> contents;  // object -> container
  std::set<std::string> devices_on;
  std::map<std::string, int> device_on_tick;
  std::map<std::string, int> placed_tick;  // object -> tick of last placement
  std::set<std::string> cracked;
  std::map<std::string, int> stirred;
  std::set<std::string> cooked;
  std::set<std::string> melted;
  std::set<std::string> served;
  int clock = 0;

  bool in(const std::string& object, const std::string& container) const {
    auto it = contents.find(object);
    return it != contents.end() && it->second == container;
  }
};

// Applies one command; throws PreconditionError when the state does not
// admit it.
KitchenState execute(const ActionCommand& cmd, const KitchenState& state,
                     const VerbTable& table = builtin_verb_table());

struct StepLogEntry {
  int line = 0;  // 1-based index into the program
  std::string command;
};

struct RunResult {
  KitchenState state;
  std::vector<StepLogEntry> log;  // executed commands only
  bool ok = true;
  int error_line = 0;  // 1-based index of the failing command when !ok
  std::string error;
};

RunResult run_program(const std::vector<ActionCommand>& cmds, KitchenState state,
                      bool skip_optional, const VerbTable& table = builtin_verb_table());

}  // namespace reground
