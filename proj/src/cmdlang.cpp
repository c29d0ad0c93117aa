#include "reground/cmdlang.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "reground/errors.hpp"

namespace reground {

using nlohmann::json;

int verb_arity(Verb v) {
  switch (v) {
    case Verb::PutDownIn:
    case Verb::PutDownOn:
    case Verb::PourInto:
    case Verb::CrackInto:
      return 2;
    default:
      return 1;
  }
}

std::string verb_name(Verb v) {
  switch (v) {
    case Verb::PickUp: return "PickUp";
    case Verb::PutDownIn: return "PutDownIn";
    case Verb::PutDownOn: return "PutDownOn";
    case Verb::GoTo: return "GoTo";
    case Verb::TurnOn: return "TurnOn";
    case Verb::TurnOff: return "TurnOff";
    case Verb::WaitFor: return "WaitFor";
    case Verb::WaitUntil: return "WaitUntil";
    case Verb::Stir: return "Stir";
    case Verb::PourInto: return "PourInto";
    case Verb::CrackInto: return "CrackInto";
    case Verb::Serve: return "Serve";
  }
  throw Error("bad verb");
}

const VerbSpec& VerbTable::spec(Verb v) const {
  for (const auto& s : verbs)
    if (s.verb == v) return s;
  throw Error("verb " + verb_name(v) + " missing from table");
}

const ConditionSpec* VerbTable::condition(const std::string& text) const {
  for (const auto& c : conditions)
    if (c.text == text) return &c;
  return nullptr;
}

VerbTable builtin_verb_table() {
  VerbTable t;
  t.verbs = {
      {Verb::PickUp, "PickUp", "Pick up <object>.", 1, {"hand empty"}, {"holding object"}},
      {Verb::PutDownIn, "PutDownIn", "Put down <object> in <container>.", 2,
       {"holding object"}, {"object in container", "hand empty"}},
      {Verb::PutDownOn, "PutDownOn", "Put down <object> on <surface>.", 2,
       {"holding object"}, {"object on surface", "hand empty"}},
      {Verb::GoTo, "GoTo", "Go to <object or location>.", 1, {}, {"location changed"}},
      {Verb::TurnOn, "TurnOn", "Turn on <instrument>.", 1, {"instrument off"},
       {"instrument on"}},
      {Verb::TurnOff, "TurnOff", "Turn off <instrument>.", 1, {"instrument on"},
       {"instrument off"}},
      {Verb::WaitFor, "WaitFor", "Wait <amount of time>.", 1, {}, {"clock advanced"}},
      {Verb::WaitUntil, "WaitUntil", "Wait until <event or condition>.", 1,
       {"condition reachable"}, {"clock advanced", "condition flag set"}},
      {Verb::Stir, "Stir", "Stir <substance>.", 1, {"substance placed"},
       {"substance stirred"}},
      {Verb::PourInto, "PourInto", "Pour <object> into <container>.", 2,
       {"holding object or its container"}, {"object in container"}},
      {Verb::CrackInto, "CrackInto", "Crack <eggs> into <container>.", 2, {"holding eggs"},
       {"eggs cracked", "eggs in container", "hand empty"}},
      {Verb::Serve, "Serve", "Serve <dish>.", 1, {"dish cooked"}, {"dish served"}},
  };
  t.conditions = {
      {"pan is warm", "stove", "", "", 2, "warm"},
      {"butter is melted", "stove", "butter", "pan", 2, "melted"},
      {"eggs are cooked", "stove", "eggs", "pan", 3, "cooked"},
  };
  return t;
}

VerbTable load_verb_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open verb table " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed verb table: ") + e.what());
  }
  VerbTable builtin = builtin_verb_table();
  VerbTable t;
  for (const auto& jv : doc.at("verbs")) {
    std::string name = jv.at("verb").get<std::string>();
    const VerbSpec* match = nullptr;
    for (const auto& s : builtin.verbs)
      if (s.name == name) match = &s;
    if (!match) throw FormatError("unknown verb " + name + " in table");
    VerbSpec s = *match;
    s.template_line = jv.value("template", s.template_line);
    if (jv.contains("arity") && jv["arity"].get<int>() != s.arity)
      throw FormatError("verb " + name + " arity mismatch");
    if (jv.contains("preconditions"))
      s.preconditions = jv["preconditions"].get<std::vector<std::string>>();
    if (jv.contains("effects")) s.effects = jv["effects"].get<std::vector<std::string>>();
    t.verbs.push_back(std::move(s));
  }
  if (doc.contains("conditions")) {
    for (const auto& jc : doc["conditions"]) {
      ConditionSpec c;
      c.text = jc.at("text").get<std::string>();
      c.device = jc.value("device", "");
      c.subject = jc.value("subject", "");
      c.container = jc.value("container", "");
      c.delay = jc.value("delay", 1);
      c.flag = jc.value("flag", "");
      t.conditions.push_back(std::move(c));
    }
  }
  return t;
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool starts_with_ci(const std::string& s, const std::string& prefix) {
  if (s.size() < prefix.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (std::tolower(static_cast<unsigned char>(s[i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i])))
      return false;
  return true;
}

// Drops a leading article from a noun phrase.
std::string strip_article(const std::string& s) {
  for (const char* art : {"the ", "a ", "an "}) {
    if (starts_with_ci(s, art)) return trim(s.substr(std::string(art).size()));
  }
  return s;
}

// Splits "X <sep> Y" at the last occurrence of the separator word.
std::optional<std::pair<std::string, std::string>> split_last(const std::string& s,
                                                              const std::string& sep) {
  std::string needle = " " + sep + " ";
  std::size_t pos = s.rfind(needle);
  if (pos == std::string::npos) return std::nullopt;
  return std::make_pair(trim(s.substr(0, pos)), trim(s.substr(pos + needle.size())));
}

ActionCommand make(Verb v, std::vector<std::string> args, bool optional_flag) {
  for (auto& a : args) {
    a = strip_article(a);
    if (a.empty()) throw Error("empty argument for " + verb_name(v));
  }
  if (static_cast<int>(args.size()) != verb_arity(v))
    throw Error("verb " + verb_name(v) + " takes " + std::to_string(verb_arity(v)) +
                " argument(s), got " + std::to_string(args.size()));
  return ActionCommand{v, std::move(args), optional_flag};
}

}  // namespace

ActionCommand parse_command(const std::string& raw) {
  std::string line = trim(raw);
  if (line.empty()) throw Error("empty command line");

  bool optional_flag = false;
  if (starts_with_ci(line, "(Optional)")) {
    optional_flag = true;
    line = trim(line.substr(std::string("(Optional)").size()));
  }
  if (!line.empty() && line.back() == '.') line = trim(line.substr(0, line.size() - 1));
  if (line.empty()) throw Error("empty command line");

  // Longest verb head first, so "Wait until" wins over "Wait" and the
  // two-argument forms claim their separator word.
  if (starts_with_ci(line, "Pick up ")) {
    return make(Verb::PickUp, {trim(line.substr(8))}, optional_flag);
  }
  if (starts_with_ci(line, "Put down ")) {
    std::string rest = trim(line.substr(9));
    if (auto parts = split_last(rest, "in"))
      return make(Verb::PutDownIn, {parts->first, parts->second}, optional_flag);
    if (auto parts = split_last(rest, "on"))
      return make(Verb::PutDownOn, {parts->first, parts->second}, optional_flag);
    throw Error("Put down needs 'in <container>' or 'on <surface>'");
  }
  if (starts_with_ci(line, "Go to ")) {
    return make(Verb::GoTo, {trim(line.substr(6))}, optional_flag);
  }
  if (starts_with_ci(line, "Turn on ")) {
    return make(Verb::TurnOn, {trim(line.substr(8))}, optional_flag);
  }
  if (starts_with_ci(line, "Turn off ")) {
    return make(Verb::TurnOff, {trim(line.substr(9))}, optional_flag);
  }
  if (starts_with_ci(line, "Wait until ")) {
    // Condition text stays verbatim; it is matched against the modeled set.
    std::string cond = trim(line.substr(11));
    if (cond.empty()) throw Error("empty argument for WaitUntil");
    return ActionCommand{Verb::WaitUntil, {cond}, optional_flag};
  }
  if (starts_with_ci(line, "Wait ")) {
    std::string amount = trim(line.substr(5));
    if (amount.empty()) throw Error("empty argument for WaitFor");
    return ActionCommand{Verb::WaitFor, {amount}, optional_flag};
  }
  if (starts_with_ci(line, "Stir ")) {
    return make(Verb::Stir, {trim(line.substr(5))}, optional_flag);
  }
  if (starts_with_ci(line, "Pour ")) {
    std::string rest = trim(line.substr(5));
    if (auto parts = split_last(rest, "into"))
      return make(Verb::PourInto, {parts->first, parts->second}, optional_flag);
    throw Error("Pour needs 'into <container>'");
  }
  if (starts_with_ci(line, "Crack ")) {
    std::string rest = trim(line.substr(6));
    if (auto parts = split_last(rest, "into"))
      return make(Verb::CrackInto, {parts->first, parts->second}, optional_flag);
    throw Error("Crack needs 'into <container>'");
  }
  if (starts_with_ci(line, "Serve ")) {
    return make(Verb::Serve, {trim(line.substr(6))}, optional_flag);
  }
  throw Error("unknown verb in command: " + trim(raw));
}

std::string print_command(const ActionCommand& cmd) {
  std::ostringstream out;
  if (cmd.optional_flag) out << "(Optional) ";
  switch (cmd.verb) {
    case Verb::PickUp: out << "Pick up " << cmd.args[0]; break;
    case Verb::PutDownIn: out << "Put down " << cmd.args[0] << " in " << cmd.args[1]; break;
    case Verb::PutDownOn: out << "Put down " << cmd.args[0] << " on " << cmd.args[1]; break;
    case Verb::GoTo: out << "Go to " << cmd.args[0]; break;
    case Verb::TurnOn: out << "Turn on " << cmd.args[0]; break;
    case Verb::TurnOff: out << "Turn off " << cmd.args[0]; break;
    case Verb::WaitFor: out << "Wait " << cmd.args[0]; break;
    case Verb::WaitUntil: out << "Wait until " << cmd.args[0]; break;
    case Verb::Stir: out << "Stir " << cmd.args[0]; break;
    case Verb::PourInto: out << "Pour " << cmd.args[0] << " into " << cmd.args[1]; break;
    case Verb::CrackInto: out << "Crack " << cmd.args[0] << " into " << cmd.args[1]; break;
    case Verb::Serve: out << "Serve " << cmd.args[0]; break;
  }
  out << ".";
  return out.str();
}

std::vector<ActionCommand> parse_program(std::istream& in) {
  std::vector<ActionCommand> cmds;
  std::string line;
  while (std::getline(in, line)) {
    std::string t = trim(line);
    if (t.empty()) continue;
    cmds.push_back(parse_command(t));
  }
  return cmds;
}

std::vector<ActionCommand> parse_program_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open program " + path);
  return parse_program(in);
}

int ValidationReport::hard_errors() const {
  int n = 0;
  for (const auto& f : findings) n += f.hard ? 1 : 0;
  return n;
}

int ValidationReport::warnings() const {
  int n = 0;
  for (const auto& f : findings) n += f.hard ? 0 : 1;
  return n;
}

namespace {

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return out;
}

bool known_noun(const std::string& noun, const SceneModel& scene,
                const std::vector<std::string>& ingredients) {
  std::string n = lower(noun);
  for (const auto& o : scene.objects())
    if (lower(o.category) == n || lower(o.id) == n) return true;
  for (const auto& ing : ingredients)
    if (lower(ing) == n) return true;
  return false;
}

}  // namespace

ValidationReport validate_program(const std::vector<ActionCommand>& cmds, const SceneModel& scene,
                                  const VerbTable& table,
                                  const std::vector<std::string>& ingredients) {
  ValidationReport report;
  std::optional<std::string> holding;
  std::map<std::string, std::string> contents;

  for (std::size_t i = 0; i < cmds.size(); ++i) {
    const ActionCommand& cmd = cmds[i];
    int line = static_cast<int>(i) + 1;
    auto warn = [&](const std::string& msg) { report.findings.push_back({line, false, msg}); };
    auto hard = [&](const std::string& msg) { report.findings.push_back({line, true, msg}); };

    if (cmd.verb != Verb::WaitFor && cmd.verb != Verb::WaitUntil) {
      for (const auto& arg : cmd.args)
        if (!known_noun(arg, scene, ingredients)) warn("unknown noun '" + arg + "'");
    }

    switch (cmd.verb) {
      case Verb::PickUp:
        if (holding) hard("pick up '" + cmd.args[0] + "' while holding '" + *holding + "'");
        holding = cmd.args[0];
        break;
      case Verb::PutDownIn:
      case Verb::PutDownOn:
        if (!holding)
          hard("put down '" + cmd.args[0] + "' while holding nothing");
        else if (*holding != cmd.args[0])
          hard("put down '" + cmd.args[0] + "' while holding '" + *holding + "'");
        else {
          contents[cmd.args[0]] = cmd.args[1];
          holding.reset();
        }
        break;
      case Verb::CrackInto:
        if (!holding || *holding != cmd.args[0])
          hard("crack '" + cmd.args[0] + "' while not holding it");
        else {
          contents[cmd.args[0]] = cmd.args[1];
          holding.reset();
        }
        break;
      case Verb::PourInto: {
        bool held = holding && *holding == cmd.args[0];
        bool in_held_container =
            holding && contents.count(cmd.args[0]) && contents[cmd.args[0]] == *holding;
        if (!held && !in_held_container)
          hard("pour '" + cmd.args[0] + "' while not holding it or its container");
        else {
          contents[cmd.args[0]] = cmd.args[1];
          if (held) holding.reset();
        }
        break;
      }
      case Verb::WaitUntil:
        if (!table.condition(cmd.args[0]))
          warn("condition '" + cmd.args[0] + "' has no modeled flag; executes as fixed delay");
        break;
      default:
        break;
    }
  }
  return report;
}

}  // namespace reground
