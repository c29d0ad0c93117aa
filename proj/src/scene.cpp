#include "reground/scene.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"
#include "reground/errors.hpp"

namespace reground {

using nlohmann::json;

IdSuffix id_suffix(const std::string& id) {
  std::size_t i = 0;
  while (i < id.size() && !std::isdigit(static_cast<unsigned char>(id[i]))) ++i;
  IdSuffix s;
  if (i == id.size()) return s;  // number stays -1: no suffix
  s.text = id.substr(i);
  s.number = std::stol(s.text.substr(0, s.text.find_first_not_of("0123456789")));
  return s;
}

namespace {

bool canonical_less(const ObjectRecord& a, const ObjectRecord& b) {
  IdSuffix sa = id_suffix(a.id), sb = id_suffix(b.id);
  if (!(sa == sb)) return sa < sb;
  return a.id < b.id;
}

void validate(const std::vector<ObjectRecord>& objects, const std::vector<Viewpoint>& viewpoints) {
  if (viewpoints.empty()) throw FormatError("scene has no viewpoint");
  std::set<std::string> seen;
  for (const auto& o : objects) {
    if (o.id.empty()) throw FormatError("object with empty id");
    if (o.category.empty()) throw FormatError("object " + o.id + " has empty category");
    if (!seen.insert(o.id).second) throw FormatError("duplicate object id " + o.id);
    if (!o.bbox.contains(o.position))
      throw FormatError("object " + o.id + " position outside its bbox");
  }
  std::set<std::string> names;
  for (const auto& v : viewpoints) {
    if (v.name.empty()) throw FormatError("viewpoint with empty name");
    if (!names.insert(v.name).second) throw FormatError("duplicate viewpoint " + v.name);
    if (norm(v.facing) == 0.0) throw FormatError("viewpoint " + v.name + " has zero facing");
  }
}

Vec3 vec_from(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) throw FormatError(std::string(what) + " must be [x, y, z]");
  return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
}

}  // namespace

SceneModel::SceneModel(std::vector<ObjectRecord> objects, std::vector<Viewpoint> viewpoints,
                       double counter_height)
    : objects_(std::move(objects)), viewpoints_(std::move(viewpoints)),
      counter_height_(counter_height) {
  validate(objects_, viewpoints_);
  std::sort(objects_.begin(), objects_.end(), canonical_less);
  for (std::size_t i = 0; i < objects_.size(); ++i) index_[objects_[i].id] = i;
}

bool SceneModel::has_object(const std::string& id) const { return index_.count(id) > 0; }

const ObjectRecord& SceneModel::object(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error("unknown object id " + id);
  return objects_[it->second];
}

const Viewpoint& SceneModel::viewpoint(const std::string& name) const {
  for (const auto& v : viewpoints_)
    if (v.name == name) return v;
  throw Error("unknown viewpoint " + name);
}

std::vector<std::string> SceneModel::ordered_ids() const {
  std::vector<std::string> ids;
  ids.reserve(objects_.size());
  for (const auto& o : objects_) ids.push_back(o.id);
  return ids;
}

bool SceneModel::operator==(const SceneModel& o) const {
  if (objects_.size() != o.objects_.size() || viewpoints_.size() != o.viewpoints_.size())
    return false;
  if (counter_height_ != o.counter_height_) return false;
  for (std::size_t i = 0; i < objects_.size(); ++i) {
    const auto& a = objects_[i];
    const auto& b = o.objects_[i];
    if (a.id != b.id || a.category != b.category || !(a.position == b.position) ||
        !(a.bbox.min == b.bbox.min) || !(a.bbox.max == b.bbox.max) || a.facts != b.facts)
      return false;
  }
  for (std::size_t i = 0; i < viewpoints_.size(); ++i) {
    const auto& a = viewpoints_[i];
    const auto& b = o.viewpoints_[i];
    if (a.name != b.name || !(a.position == b.position) || !(a.facing == b.facing)) return false;
  }
  return true;
}

SceneModel load_scene(std::istream& in) {
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed scene document: ") + e.what());
  }
  if (!doc.contains("objects") || !doc["objects"].is_array())
    throw FormatError("scene document missing \"objects\" array");
  if (!doc.contains("viewpoints") || !doc["viewpoints"].is_array())
    throw FormatError("scene document missing \"viewpoints\" array");

  std::vector<ObjectRecord> objects;
  for (const auto& jo : doc["objects"]) {
    ObjectRecord o;
    o.id = jo.at("id").get<std::string>();
    o.category = jo.at("category").get<std::string>();
    o.position = vec_from(jo.at("position"), "position");
    o.bbox.min = vec_from(jo.at("bbox").at("min"), "bbox.min");
    o.bbox.max = vec_from(jo.at("bbox").at("max"), "bbox.max");
    if (jo.contains("facts"))
      for (auto it = jo["facts"].begin(); it != jo["facts"].end(); ++it)
        o.facts[it.key()] = it.value().get<std::string>();
    objects.push_back(std::move(o));
  }
  std::vector<Viewpoint> viewpoints;
  for (const auto& jv : doc["viewpoints"]) {
    Viewpoint v;
    v.name = jv.at("name").get<std::string>();
    v.position = vec_from(jv.at("position"), "viewpoint position");
    v.facing = vec_from(jv.at("facing"), "viewpoint facing");
    viewpoints.push_back(std::move(v));
  }
  double counter = doc.value("counter_height", 0.0);
  return SceneModel(std::move(objects), std::move(viewpoints), counter);
}

SceneModel load_scene_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open scene file " + path);
  return load_scene(in);
}

std::string serialize_scene(const SceneModel& scene) {
  json doc;
  doc["objects"] = json::array();
  for (const auto& o : scene.objects()) {
    json jo;
    jo["id"] = o.id;
    jo["category"] = o.category;
    jo["position"] = {o.position.x, o.position.y, o.position.z};
    jo["bbox"] = {{"min", {o.bbox.min.x, o.bbox.min.y, o.bbox.min.z}},
                  {"max", {o.bbox.max.x, o.bbox.max.y, o.bbox.max.z}}};
    if (!o.facts.empty()) {
      json jf = json::object();
      for (const auto& [k, v] : o.facts) jf[k] = v;
      jo["facts"] = jf;
    }
    doc["objects"].push_back(jo);
  }
  doc["viewpoints"] = json::array();
  for (const auto& v : scene.viewpoints()) {
    doc["viewpoints"].push_back({{"name", v.name},
                                 {"position", {v.position.x, v.position.y, v.position.z}},
                                 {"facing", {v.facing.x, v.facing.y, v.facing.z}}});
  }
  if (scene.counter_height() != 0.0) doc["counter_height"] = scene.counter_height();
  return doc.dump(2) + "\n";
}

std::pair<SceneModel, IdMapping> anonymize(const SceneModel& scene) {
  IdMapping mapping;
  std::set<std::string> suffixes;
  std::vector<ObjectRecord> objects = scene.objects();
  for (auto& o : objects) {
    IdSuffix s = id_suffix(o.id);
    if (s.number < 0) throw Error("object id " + o.id + " has no numeric suffix");
    if (!suffixes.insert(s.text).second)
      throw Error("anonymization collision on suffix " + s.text);
    std::string anon = "Object" + s.text;
    mapping.to_anonymous[o.id] = anon;
    mapping.to_meaningful[anon] = o.id;
    o.id = anon;
  }
  return {SceneModel(std::move(objects), scene.viewpoints(), scene.counter_height()),
          mapping};
}

std::string render_category_list(const SceneModel& scene, IdStyle style) {
  if (scene.objects().empty()) throw Error("cannot render category list of empty scene");
  std::ostringstream out;
  if (style == IdStyle::Meaningful) {
    for (const auto& o : scene.objects()) out << o.id << " : category " << o.category << "\n";
  } else {
    auto [anon, mapping] = anonymize(scene);
    for (const auto& o : anon.objects()) out << o.id << ": category " << o.category << "\n";
  }
  return out.str();
}

}  // namespace reground
