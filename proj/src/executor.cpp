#include "reground/executor.hpp"

#include <algorithm>

#include "reground/errors.hpp"

namespace reground {

namespace {

// Tick at which a modeled condition becomes true, or -1 when its
// prerequisites are not in place.
int condition_ready_tick(const ConditionSpec& c, const KitchenState& s) {
  int base = 0;
  if (!c.device.empty()) {
    if (!s.devices_on.count(c.device)) return -1;
    base = std::max(base, s.device_on_tick.at(c.device));
  }
  if (!c.subject.empty()) {
    if (!s.in(c.subject, c.container)) return -1;
    auto it = s.placed_tick.find(c.subject);
    if (it != s.placed_tick.end()) base = std::max(base, it->second);
  }
  return base + c.delay;
}

}  // namespace

KitchenState execute(const ActionCommand& cmd, const KitchenState& state,
                     const VerbTable& table) {
  KitchenState s = state;
  s.clock += 1;

  switch (cmd.verb) {
    case Verb::PickUp:
      if (s.holding)
        throw PreconditionError("cannot pick up " + cmd.args[0] + " while holding " +
                                *s.holding);
      s.holding = cmd.args[0];
      s.contents.erase(cmd.args[0]);
      break;

    case Verb::PutDownIn:
    case Verb::PutDownOn:
      if (!s.holding || *s.holding != cmd.args[0])
        throw PreconditionError("cannot put down " + cmd.args[0] + ": not holding it");
      s.contents[cmd.args[0]] = cmd.args[1];
      s.placed_tick[cmd.args[0]] = s.clock;
      s.holding.reset();
      break;

    case Verb::GoTo:
      s.location = cmd.args[0];
      break;

    case Verb::TurnOn:
      if (s.devices_on.count(cmd.args[0]))
        throw PreconditionError(cmd.args[0] + " is already on");
      s.devices_on.insert(cmd.args[0]);
      s.device_on_tick[cmd.args[0]] = s.clock;
      break;

    case Verb::TurnOff:
      if (!s.devices_on.count(cmd.args[0]))
        throw PreconditionError(cmd.args[0] + " is already off");
      s.devices_on.erase(cmd.args[0]);
      break;

    case Verb::WaitFor:
      s.clock += 1;
      break;

    case Verb::WaitUntil: {
      const ConditionSpec* c = table.condition(cmd.args[0]);
      if (!c) {
        s.clock += 1;  // unmodeled condition: fixed-delay wait
        break;
      }
      int ready = condition_ready_tick(*c, s);
      if (ready < 0)
        throw PreconditionError("condition '" + cmd.args[0] +
                                "' can never become true in this state");
      s.clock = std::max(s.clock, ready);
      if (c->flag == "melted") s.melted.insert(c->subject);
      if (c->flag == "cooked") s.cooked.insert(c->subject);
      break;
    }

    case Verb::Stir: {
      // Stirring uses whatever implement is at hand; no hold requirement.
      if (!s.contents.count(cmd.args[0]) && !s.cracked.count(cmd.args[0]))
        throw PreconditionError("nothing to stir: " + cmd.args[0] +
                                " has not been placed anywhere");
      s.stirred[cmd.args[0]] += 1;
      break;
    }

    case Verb::PourInto: {
      bool held = s.holding && *s.holding == cmd.args[0];
      bool in_held = s.holding && s.in(cmd.args[0], *s.holding);
      if (!held && !in_held)
        throw PreconditionError("cannot pour " + cmd.args[0] +
                                ": not holding it or its container");
      s.contents[cmd.args[0]] = cmd.args[1];
      s.placed_tick[cmd.args[0]] = s.clock;
      if (held) s.holding.reset();  // contents poured away, hand free
      break;
    }

    case Verb::CrackInto:
      if (!s.holding || *s.holding != cmd.args[0])
        throw PreconditionError("cannot crack " + cmd.args[0] + ": not holding it");
      s.cracked.insert(cmd.args[0]);
      s.contents[cmd.args[0]] = cmd.args[1];
      s.placed_tick[cmd.args[0]] = s.clock;
      s.holding.reset();
      break;

    case Verb::Serve:
      if (!s.cooked.count(cmd.args[0]))
        throw PreconditionError("cannot serve " + cmd.args[0] + ": not cooked");
      s.served.insert(cmd.args[0]);
      break;
  }
  return s;
}

RunResult run_program(const std::vector<ActionCommand>& cmds, KitchenState state,
                      bool skip_optional, const VerbTable& table) {
  RunResult result;
  result.state = std::move(state);
  for (std::size_t i = 0; i < cmds.size(); ++i) {
    const ActionCommand& cmd = cmds[i];
    if (skip_optional && cmd.optional_flag) continue;
    try {
      result.state = execute(cmd, result.state, table);
    } catch (const Error& e) {
      result.ok = false;
      result.error_line = static_cast<int>(i) + 1;
      result.error = e.what();
      return result;
    }
    result.log.push_back({static_cast<int>(i) + 1, print_command(cmd)});
  }
  return result;
}

}  // namespace reground
