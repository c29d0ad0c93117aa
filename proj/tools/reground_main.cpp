#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "reground/cmdlang.hpp"
#include "reground/errors.hpp"
#include "reground/completion.hpp"
#include "reground/constraints.hpp"
#include "reground/eval.hpp"
#include "reground/executor.hpp"
#include "reground/knowledge.hpp"
#include "reground/neighbor_graph.hpp"
#include "reground/prompts.hpp"
#include "reground/resolver.hpp"
#include "reground/response_parse.hpp"
#include "reground/scene.hpp"

using namespace reground;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPipeline = 1;
constexpr int kExitUnresolvable = 2;
constexpr int kExitRejected = 3;
constexpr int kExitConfig = 64;

struct GlobalOptions {
  std::string scene_path = "fixtures/kitchen_scene.json";
  std::string replay_path;
  bool live = false;
  std::string config_path;
  std::string out_dir = "out";
  bool assume_yes = false;
  bool assume_no = false;
  bool provisional = false;
  bool show_trace = false;
};

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

CompletionClient make_client(const GlobalOptions& g) {
  if (g.live) {
    LiveConfig config = load_live_config(g.config_path);
    if (config.endpoint.empty())
      throw Error("live mode needs an endpoint (config file or REGROUND_ENDPOINT)");
    std::filesystem::create_directories(g.out_dir);
    return CompletionClient::live(config, g.out_dir + "/live.transcript");
  }
  if (g.replay_path.empty())
    throw Error("replay mode needs --replay <transcript> (or pass --live)");
  return CompletionClient::replay(g.replay_path);
}

void print_result(const GroundingResult& r, const GlobalOptions& g) {
  if (r.matches.empty()) {
    std::cout << "unresolvable: no object matches\n";
  } else {
    std::cout << "matches:";
    for (const auto& m : r.matches) std::cout << " " << m;
    std::cout << "\n";
    if (r.ambiguous) std::cout << "ambiguous: several objects match equally well\n";
  }
  if (g.show_trace)
    for (const auto& line : r.trace) std::cout << "  " << line << "\n";
}

int cmd_ground(const GlobalOptions& g, const std::string& dsl, bool use_llm, char variant_label,
               const std::vector<std::string>& re_args, const std::string& gold_path) {
  SceneModel scene = load_scene_file(g.scene_path);
  NeighborGraph graph = build_graph(scene, scene.viewpoints().front().name);

  if (!use_llm) {
    Query query = parse_query(dsl);
    GroundingResult result = resolve(query, scene, graph);
    print_result(result, g);
    return result.matches.empty() ? kExitUnresolvable : kExitOk;
  }

  CompletionClient client = make_client(g);
  PromptVariant variant = variant_by_label(variant_label);
  if (!re_args.empty()) {
    PromptDoc prompt = build_grounding_prompt(scene, graph, variant, re_args);
    std::string response = client.complete(prompt);
    std::set<std::string> known;
    for (const auto& o : scene.objects()) known.insert(o.id);
    for (const auto& o : anonymize(scene).first.objects()) known.insert(o.id);
    for (const auto& line : parse_grounding_response(response, known)) {
      std::cout << line.re_text << " ->";
      if (line.unparsed) {
        std::cout << " (unparsed)";
      } else {
        for (const auto& id : line.ids) std::cout << " " << id;
      }
      std::cout << "\n";
    }
    return kExitOk;
  }
  GoldSet gold = load_gold_set(gold_path);
  VariantResult result = run_variant(variant, scene, client, gold);
  if (result.incomplete) {
    std::cerr << "variant " << variant.label << " response unusable\n";
    return kExitPipeline;
  }
  for (std::size_t i = 0; i < gold.entries.size(); ++i) {
    std::cout << gold.entries[i].text << " ->";
    for (const auto& id : result.predictions[i]) std::cout << " " << id;
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_eval(const GlobalOptions& g, const std::string& gold_path, bool check,
             const std::string& variants_arg) {
  SceneModel scene = load_scene_file(g.scene_path);
  GoldSet gold = load_gold_set(gold_path);
  CompletionClient client = make_client(g);

  std::vector<PromptVariant> variants;
  for (char c : variants_arg) variants.push_back(variant_by_label(c));

  std::vector<VariantResult> results = run_variants(variants, scene, client, gold);
  EvalReport report = emit_report(results, gold);
  write_report(report, g.out_dir);
  std::cout << report.summary;
  std::cout << "report written to " << g.out_dir << "/report.csv\n";

  if (check) {
    for (const auto& s : report.scores) {
      auto it = gold.expected_replay_hits.find(s.label);
      if (it == gold.expected_replay_hits.end()) continue;
      if (s.hits != it->second) {
        std::cerr << "accuracy check failed: variant " << s.label << " got " << s.hits
                  << ", expected " << it->second << "\n";
        return kExitPipeline;
      }
    }
    std::cout << "accuracy check passed\n";
  }
  return kExitOk;
}

int cmd_simplify(const GlobalOptions& g, const std::string& recipe_path,
                 const std::string& verbs_path, const std::string& kitchen_path) {
  VerbTable table = load_verb_table(verbs_path);
  PromptDoc prompt = build_simplify_prompt(table, slurp(recipe_path));
  CompletionClient client = make_client(g);
  std::string response = client.complete(prompt);

  std::istringstream in(response);
  std::vector<ActionCommand> program;
  try {
    program = parse_program(in);
  } catch (const Error& e) {
    std::cerr << "response line failed to parse: " << e.what() << "\n";
    return kExitPipeline;
  }

  SceneModel kitchen = load_scene_file(kitchen_path);
  std::vector<std::string> ingredients = {"eggs", "salt", "pepper", "butter", "milk"};
  ValidationReport report = validate_program(program, kitchen, table, ingredients);
  for (const auto& f : report.findings)
    std::cout << (f.hard ? "error" : "warning") << " at line " << f.line << ": " << f.message
              << "\n";

  std::filesystem::create_directories(g.out_dir);
  std::string out_path = g.out_dir + "/program.cmds";
  std::ofstream out(out_path, std::ios::trunc);
  for (const auto& cmd : program) out << print_command(cmd) << "\n";
  std::cout << program.size() << " commands written to " << out_path << "\n";
  return report.hard_errors() == 0 ? kExitOk : kExitPipeline;
}

int cmd_store(const GlobalOptions& g, const std::string& scene_path,
              const std::string& queries_path, const std::string& types_path,
              const std::string& facts_path) {
  SceneModel scene = load_scene_file(scene_path);
  std::vector<std::string> type_classes = read_lines(types_path);
  std::vector<std::string> queries = read_lines(queries_path);
  PromptDoc prompt = build_storage_prompt(scene, type_classes, queries);
  CompletionClient client = make_client(g);
  std::string response = client.complete(prompt);

  StorageParse parsed = parse_storage_response(response, scene);
  for (const auto& line : parsed.unparsed) std::cout << "unparsed: " << line << "\n";

  FactStore store = FactStore::load(facts_path);
  bool any_reject = false;
  for (const auto& s : parsed.suggestions) {
    Verdict verdict = verify_suggestion(s, store, scene);
    std::cout << s.re_text << ": ";
    switch (verdict.kind) {
      case VerdictKind::Accept:
        std::cout << "accept (" << verdict.reason << ")\n";
        break;
      case VerdictKind::Reject:
        any_reject = true;
        std::cout << "reject (" << verdict.reason << ")\n";
        break;
      case VerdictKind::NeedsConfirmation: {
        bool commit = false;
        bool confirmed = false;
        if (g.assume_yes) {
          commit = true;
          confirmed = true;
        } else if (g.provisional) {
          commit = true;  // act on it provisionally, unconfirmed
        } else if (!g.assume_no) {
          std::cout << "store " << s.objects.front() << " at " << s.locations.front()
                    << "? [y/N] " << std::flush;
          std::string answer;
          std::getline(std::cin, answer);
          commit = confirmed = !answer.empty() && (answer[0] == 'y' || answer[0] == 'Y');
        }
        if (commit) {
          store = commit_fact(std::move(store), s, confirmed);
          std::cout << "needs-confirmation -> committed"
                    << (confirmed ? " (confirmed)" : " (provisional)") << "\n";
        } else {
          std::cout << "needs-confirmation (skipped)\n";
        }
        break;
      }
    }
  }
  store.save(facts_path);
  std::cout << parsed.suggestions.size() << " suggestions processed; facts in " << facts_path
            << "\n";
  if (any_reject && (g.assume_yes || g.assume_no)) return kExitRejected;
  return kExitOk;
}

int cmd_exec(const GlobalOptions& g, const std::string& program_path,
             const std::string& kitchen_path, const std::string& verbs_path,
             bool skip_optional) {
  VerbTable table = load_verb_table(verbs_path);
  std::vector<ActionCommand> program = parse_program_file(program_path);
  SceneModel kitchen = load_scene_file(kitchen_path);
  std::vector<std::string> ingredients = {"eggs", "salt", "pepper", "butter", "milk"};
  ValidationReport report = validate_program(program, kitchen, table, ingredients);
  for (const auto& f : report.findings)
    std::cout << (f.hard ? "error" : "warning") << " at line " << f.line << ": " << f.message
              << "\n";
  if (report.hard_errors() > 0) {
    std::cerr << "validation found " << report.hard_errors() << " hard error(s)\n";
    return kExitPipeline;
  }

  RunResult run = run_program(program, KitchenState{}, skip_optional, table);
  for (const auto& step : run.log)
    if (g.show_trace) std::cout << "  [" << step.line << "] " << step.command << "\n";
  if (!run.ok) {
    std::cerr << "execution failed at line " << run.error_line << ": " << run.error << "\n";
    return kExitPipeline;
  }
  std::cout << "executed " << run.log.size() << " steps\n";
  std::cout << "final state:";
  for (const auto& obj : run.state.cooked) {
    std::cout << " " << obj << ": cooked";
    if (run.state.served.count(obj)) std::cout << ", served";
  }
  if (run.state.devices_on.empty()) std::cout << "; all devices off";
  std::cout << "\n";
  return kExitOk;
}

int cmd_repl(const GlobalOptions& g, const std::string& facts_path,
             const std::string& verbs_path) {
  SceneModel scene = load_scene_file(g.scene_path);
  NeighborGraph graph = build_graph(scene, scene.viewpoints().front().name);
  FactStore store = FactStore::load(facts_path);
  VerbTable table = load_verb_table(verbs_path);
  KitchenState state;

  std::cout << "reground repl; (select ...) queries, 'do <command>', "
               "'fact <object> <key> <value>', 'find <category> <key>=<value>', 'quit'\n";
  std::string line;
  while (std::cout << "> " << std::flush, std::getline(std::cin, line)) {
    try {
      if (line == "quit" || line == "exit") break;
      if (line.empty()) continue;
      if (line[0] == '(') {
        print_result(resolve(parse_query(line), scene, graph), g);
      } else if (line.rfind("do ", 0) == 0) {
        ActionCommand cmd = parse_command(line.substr(3));
        state = execute(cmd, state, table);
        std::cout << "ok; clock=" << state.clock << "\n";
      } else if (line.rfind("fact ", 0) == 0) {
        std::istringstream in(line.substr(5));
        std::string object, key, value;
        in >> object >> key >> value;
        if (object.empty() || key.empty() || value.empty())
          throw Error("usage: fact <object> <key> <value>");
        bool confirmed = g.assume_yes;
        if (!g.assume_yes && !g.assume_no) {
          std::cout << "confirm " << object << " " << key << "=" << value << "? [y/N] "
                    << std::flush;
          std::string answer;
          std::getline(std::cin, answer);
          confirmed = !answer.empty() && (answer[0] == 'y' || answer[0] == 'Y');
        }
        store.add({object, key, value, Provenance::Human, confirmed});
        std::cout << (confirmed ? "confirmed" : "recorded unconfirmed") << "\n";
      } else if (line.rfind("find ", 0) == 0) {
        std::istringstream in(line.substr(5));
        std::string category, kv;
        in >> category >> kv;
        auto eq = kv.find('=');
        if (eq == std::string::npos) throw Error("usage: find <category> <key>=<value>");
        print_result(resolve_functional(category, kv.substr(0, eq), kv.substr(eq + 1), scene,
                                        store),
                     g);
      } else {
        std::cout << "unrecognized input; try 'quit'\n";
      }
    } catch (const Error& e) {
      std::cout << "error: " << e.what() << "\n";
    }
  }
  store.save(facts_path);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Referring-expression grounding toolkit"};
  app.require_subcommand(1);

  GlobalOptions g;
  app.add_option("--scene", g.scene_path, "Scene file")->capture_default_str();
  app.add_option("--replay", g.replay_path, "Replay transcript path");
  app.add_flag("--live", g.live, "Talk to a live endpoint instead of a transcript");
  app.add_option("--config", g.config_path, "Endpoint config file (live mode)");
  app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();
  app.add_flag("--assume-yes", g.assume_yes, "Batch policy: confirm every suggestion");
  app.add_flag("--assume-no", g.assume_no, "Batch policy: never confirm");
  app.add_flag("--provisional", g.provisional, "Act on unconfirmed suggestions");
  app.add_flag("--trace,-v", g.show_trace, "Show derivation traces / step logs");

  auto* ground = app.add_subcommand("ground", "Resolve referring expressions");
  std::string dsl;
  bool use_llm = false;
  std::string variant_label = "A";
  std::vector<std::string> re_args;
  std::string gold_path = "fixtures/gold_set.json";
  ground->add_option("--dsl", dsl, "Constraint query in the s-expression DSL");
  ground->add_flag("--llm", use_llm, "Ground via the language-model bridge");
  ground->add_option("--variant", variant_label, "Prompt variant label A..H")
      ->check(CLI::IsMember({"A", "B", "C", "D", "E", "F", "G", "H"}));
  ground->add_option("--gold", gold_path, "Gold set used when no expression is given")
      ->capture_default_str();
  ground->add_option("expression", re_args, "Referring expression(s) for --llm");

  auto* eval = app.add_subcommand("eval", "Run prompt variants and score them");
  std::string eval_gold = "fixtures/gold_set.json";
  std::string variants_arg = "ABCDEFGH";
  bool check = false;
  eval->add_option("--gold", eval_gold, "Gold set file")->capture_default_str();
  eval->add_option("--variants", variants_arg, "Variant labels to run")->capture_default_str();
  eval->add_flag("--check", check, "Exit nonzero when replay accuracy deviates");

  auto* simplify = app.add_subcommand("simplify", "Turn a recipe into the command language");
  std::string recipe_path;
  std::string verbs_path = "fixtures/verbs.json";
  std::string kitchen_path = "fixtures/sim_kitchen.json";
  simplify->add_option("--recipe", recipe_path, "Recipe steps text")->required();
  simplify->add_option("--verbs", verbs_path, "Verb table file")->capture_default_str();
  simplify->add_option("--kitchen", kitchen_path, "Kitchen scene for validation")
      ->capture_default_str();

  auto* store_cmd = app.add_subcommand("store", "Ask where to store objects and verify");
  std::string store_scene = "fixtures/storage_scene.json";
  std::string queries_path = "fixtures/storage_queries.txt";
  std::string types_path = "fixtures/storage_types.txt";
  std::string facts_path = "out/facts.jsonl";
  store_cmd->add_option("--scene", store_scene, "Storage scene file")->capture_default_str();
  store_cmd->add_option("--queries", queries_path, "Storage referring expressions")
      ->capture_default_str();
  store_cmd->add_option("--types", types_path, "Type class lines")->capture_default_str();
  store_cmd->add_option("--facts", facts_path, "Fact store journal")->capture_default_str();

  auto* exec_cmd = app.add_subcommand("exec", "Run a command program in the simulated kitchen");
  std::string program_path;
  std::string exec_kitchen = "fixtures/sim_kitchen.json";
  std::string exec_verbs = "fixtures/verbs.json";
  bool skip_optional = false;
  exec_cmd->add_option("--program", program_path, "Program file, one command per line")
      ->required();
  exec_cmd->add_option("--kitchen", exec_kitchen, "Kitchen scene")->capture_default_str();
  exec_cmd->add_option("--verbs", exec_verbs, "Verb table file")->capture_default_str();
  exec_cmd->add_flag("--skip-optional", skip_optional, "Skip commands marked (Optional)");

  auto* repl = app.add_subcommand("repl", "Interactive queries and commands");
  std::string repl_facts = "out/facts.jsonl";
  std::string repl_verbs = "fixtures/verbs.json";
  repl->add_option("--facts", repl_facts, "Fact store journal")->capture_default_str();
  repl->add_option("--verbs", repl_verbs, "Verb table file")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (ground->parsed())
      return cmd_ground(g, dsl, use_llm, variant_label[0], re_args, gold_path);
    if (eval->parsed()) return cmd_eval(g, eval_gold, check, variants_arg);
    if (simplify->parsed()) return cmd_simplify(g, recipe_path, verbs_path, kitchen_path);
    if (store_cmd->parsed())
      return cmd_store(g, store_scene, queries_path, types_path, facts_path);
    if (exec_cmd->parsed())
      return cmd_exec(g, program_path, exec_kitchen, exec_verbs, skip_optional);
    if (repl->parsed()) return cmd_repl(g, repl_facts, repl_verbs);
  } catch (const UnresolvableError& e) {
    std::cerr << "unresolvable: " << e.what() << "\n";
    return kExitUnresolvable;
  } catch (const FormatError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitPipeline;
  }
  return kExitConfig;
}
