#include "reground/prompts.hpp"

#include <sstream>

#include "reground/completion.hpp"
#include "reground/errors.hpp"

namespace reground {

PromptVariant variant_by_label(char label) {
  const std::string legend = "(N:North S:South W:West E:East U:Up D:Down)";
  switch (label) {
    case 'A': return {'A', IdStyle::Meaningful, GraphEncoding::Language, "", false};
    case 'B': return {'B', std::nullopt, GraphEncoding::Language, "", false};
    case 'C': return {'C', IdStyle::Meaningful, GraphEncoding::SignedAxis, "", false};
    case 'D': return {'D', std::nullopt, GraphEncoding::SignedAxis, "", false};
    case 'E':
      return {'E', IdStyle::Meaningful, GraphEncoding::SignedAxis,
              "In this neighbor graph +x is to the left and +y is to the right.", false};
    case 'F': return {'F', std::nullopt, GraphEncoding::SignedAxis, "", false};
    case 'G': return {'G', IdStyle::Anonymized, GraphEncoding::CardinalJson, legend, false};
    case 'H':
      return {'H', IdStyle::Anonymized, GraphEncoding::CardinalJson,
              legend + " spatial relations are viewpoint dependent (Neighbors given from two "
                       "different labeled viewpoints)",
              true};
    default: throw Error(std::string("unknown prompt variant '") + label + "'");
  }
}

std::vector<PromptVariant> all_variants() {
  std::vector<PromptVariant> out;
  for (char c = 'A'; c <= 'H'; ++c) out.push_back(variant_by_label(c));
  return out;
}

namespace {

PromptDoc finish(std::string text, PromptKind kind) {
  PromptDoc doc;
  doc.inputs_digest = content_digest(text);
  doc.text = std::move(text);
  doc.kind = kind;
  return doc;
}

}  // namespace

PromptDoc build_grounding_prompt(const SceneModel& scene, const NeighborGraph& graph,
                                 const PromptVariant& variant,
                                 const std::vector<std::string>& res) {
  if (res.empty()) throw Error("grounding prompt needs at least one referring expression");
  if (variant.id_style == IdStyle::Anonymized && variant.encoding != GraphEncoding::CardinalJson)
    throw Error("anonymized variants use the cardinal JSON encoding");

  // Anonymized variants rebuild the graph over the renamed scene so the
  // rendered ids match the category list.
  const SceneModel* render_scene = &scene;
  SceneModel anon_scene;
  if (variant.id_style == IdStyle::Anonymized) {
    anon_scene = anonymize(scene).first;
    render_scene = &anon_scene;
  }

  std::ostringstream out;
  out << "I am a robot trying to talk with a human, and I need help understanding the "
         "human's language. Specifically, I need help ground referring expressions to "
         "objects I can see in my world.\n\n";

  if (variant.id_style) {
    out << render_category_list(scene, *variant.id_style) << "\n";
  }

  auto render_for = [&](const std::string& viewpoint) {
    return render_graph(build_graph(*render_scene, viewpoint), variant.encoding);
  };
  if (variant.dual_viewpoint) {
    for (const auto& vp : scene.viewpoints()) {
      out << "Viewpoint " << vp.name << ":\n" << render_for(vp.name) << "\n";
    }
  } else {
    out << render_for(graph.viewpoint().name) << "\n";
  }

  if (!variant.explanation.empty()) out << variant.explanation << "\n\n";

  std::string example_id =
      variant.id_style == IdStyle::Anonymized ? "Object17" : "CounterTop17";
  out << "If I give you a referring expression, I want you to return the object id of the "
         "correct object.\n"
         "Example:\n"
         "Input: 'the countertop left to the microwave'\n"
         "Output: "
      << example_id
      << "\n\n"
         "Here are the referring expressions I would like you to ground for me.\n"
         "For each give me a single line of text with the referring expression followed by "
         "the object id it refers to.\n"
         "If more than one matches, give all the matches.\n\n"
         "Input referring expressions:\n\n";
  for (const auto& re : res) out << re << "\n";
  out << "\nPlease give me your answers:\n";
  return finish(out.str(), PromptKind::Grounding);
}

PromptDoc build_storage_prompt(const SceneModel& scene,
                               const std::vector<std::string>& type_classes,
                               const std::vector<std::string>& res) {
  if (type_classes.empty()) throw Error("storage prompt needs type classes");
  if (res.empty()) throw Error("storage prompt needs at least one referring expression");

  std::ostringstream out;
  out << "I am a robot trying to talk with a human, and I need help understanding the "
         "human's language. Specifically, the human has asked me to store things, and I "
         "don't know what store means. Here are the objects I can see:\n\n"
         "World State:\n\n";
  for (const auto& o : scene.objects()) out << o.id << ": category " << o.category << "\n";
  out << "\nHere are some referring expression for things the human wants me to store. For "
         "each give me a single line of text with the referring expression followed by the "
         "object id of the object to be stored and the object id of the location to store "
         "it. If more than one matches, give all the matches.\n\n"
         "There are several types of objects that I want to be able to store:\n\n";
  for (const auto& t : type_classes) out << t << "\n";
  out << "\nInput referring expressions:\n\n";
  for (const auto& re : res) out << re << "\n";
  out << "\nPlease tell me where would be a good place to store each of these objects:\n";
  return finish(out.str(), PromptKind::Storage);
}

PromptDoc build_simplify_prompt(const VerbTable& verbs, const std::string& steps_text) {
  if (verbs.verbs.size() != builtin_verb_table().verbs.size())
    throw Error("simplify prompt requires the full verb inventory");

  std::ostringstream out;
  out << "I am a robot trying to understand human instructions. My language abilities are "
         "very limited.\n"
         "I've been given a recipe for making scrambled eggs. I can sort of understand the "
         "list of ingredients,\n"
         "but the language in the steps are too complicated for me.\n"
         "I'd like you to translate it into a series of short commands, one per line.\n"
         "Each line should have a simple action verb followed by one or two arguments.\n\n"
         "Here are the list of action verbs and their arguments that I can easily "
         "understand:\n\n";
  for (const auto& v : verbs.verbs) out << v.template_line << "\n";
  out << "\nHere is the procedure for making scrambled eggs:\n\n";
  out << steps_text;
  if (steps_text.empty() || steps_text.back() != '\n') out << "\n";
  out << "\nPlease give me a list of steps to make scrambled eggs I can understand with no "
         "additional comments:\n";
  return finish(out.str(), PromptKind::Simplify);
}

}  // namespace reground
