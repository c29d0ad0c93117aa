#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "reground/geometry.hpp"

namespace reground {

// Trailing part of an object id starting at the first digit ("Cabinet7" ->
// "7", "CounterTop19a" -> "19a"). Ids sort by the numeric prefix of the
// suffix, then by the full suffix string.
struct IdSuffix {
  long number = -1;
  std::string text;

  bool operator<(const IdSuffix& o) const {
    if (number != o.number) return number < o.number;
    return text < o.text;
  }
  bool operator==(const IdSuffix& o) const { return number == o.number && text == o.text; }
};

IdSuffix id_suffix(const std::string& id);

struct ObjectRecord {
  std::string id;
  std::string category;
  Vec3 position;
  Box bbox;
  std::map<std::string, std::string> facts;
};

enum class IdStyle { Meaningful, Anonymized };

class SceneModel {
 public:
  SceneModel() = default;
  SceneModel(std::vector<ObjectRecord> objects, std::vector<Viewpoint> viewpoints,
             double counter_height = 0.0);

  const std::vector<ObjectRecord>& objects() const { return objects_; }
  const std::vector<Viewpoint>& viewpoints() const { return viewpoints_; }
  double counter_height() const { return counter_height_; }

  bool has_object(const std::string& id) const;
  const ObjectRecord& object(const std::string& id) const;
  const Viewpoint& viewpoint(const std::string& name) const;

  // Ids in canonical order (ascending numeric suffix).
  std::vector<std::string> ordered_ids() const;

  bool operator==(const SceneModel& o) const;

 private:
  std::vector<ObjectRecord> objects_;  // kept sorted in canonical order
  std::vector<Viewpoint> viewpoints_;
  double counter_height_ = 0.0;
  std::map<std::string, std::size_t> index_;
};

// Bijection between meaningful and anonymized ids.
struct IdMapping {
  std::map<std::string, std::string> to_anonymous;
  std::map<std::string, std::string> to_meaningful;
};

SceneModel load_scene(std::istream& in);
SceneModel load_scene_file(const std::string& path);
std::string serialize_scene(const SceneModel& scene);

// "<Category><suffix>" -> "Object<suffix>". Fails if a suffix is missing or
// two objects would collide after renaming.
std::pair<SceneModel, IdMapping> anonymize(const SceneModel& scene);

// One line per object: "Cabinet7 : category Cabinet" (Meaningful) or
// "Object7: category Cabinet" (Anonymized).
std::string render_category_list(const SceneModel& scene, IdStyle style);

}  // namespace reground
