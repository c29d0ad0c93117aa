#include "reground/neighbor_graph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "reground/errors.hpp"

namespace reground {

Relation inverse(Relation r) {
  switch (r) {
    case Relation::Left: return Relation::Right;
    case Relation::Right: return Relation::Left;
    case Relation::Above: return Relation::Below;
    case Relation::Below: return Relation::Above;
    case Relation::Front: return Relation::Behind;
    case Relation::Behind: return Relation::Front;
  }
  throw Error("bad relation");
}

std::string relation_name(Relation r) {
  switch (r) {
    case Relation::Left: return "left";
    case Relation::Right: return "right";
    case Relation::Above: return "above";
    case Relation::Below: return "below";
    case Relation::Front: return "front";
    case Relation::Behind: return "behind";
  }
  throw Error("bad relation");
}

std::string relation_axis_key(Relation r) {
  switch (r) {
    case Relation::Left: return "+x";
    case Relation::Right: return "-x";
    case Relation::Above: return "+z";
    case Relation::Below: return "-z";
    case Relation::Front: return "+y";
    case Relation::Behind: return "-y";
  }
  throw Error("bad relation");
}

std::optional<Relation> classify_displacement(const Vec3& d, const Viewpoint& vp) {
  double lat = dot(d, vp.left_axis());
  double dep = dot(d, vp.front_axis());
  double vert = dot(d, vp.up_axis());
  double alat = std::abs(lat), adep = std::abs(dep), avert = std::abs(vert);
  if (alat > adep && alat > avert) return lat > 0 ? Relation::Left : Relation::Right;
  if (avert > alat && avert > adep) return vert > 0 ? Relation::Above : Relation::Below;
  if (adep > alat && adep > avert) return dep > 0 ? Relation::Front : Relation::Behind;
  return std::nullopt;  // no strictly dominant axis
}

NeighborGraph::NeighborGraph(Viewpoint viewpoint, std::vector<std::string> ordered_ids,
                             std::map<std::string, std::array<std::vector<NeighborEntry>, 6>> edges)
    : viewpoint_(std::move(viewpoint)), ordered_ids_(std::move(ordered_ids)),
      edges_(std::move(edges)) {
  for (const auto& id : ordered_ids_) {
    for (Relation r : kAllRelations) {
      const auto& list = edges_.at(id)[static_cast<int>(r)];
      if (list.size() >= 2 && list[1].dist2 - list[0].dist2 <= kTieEpsilon) {
        std::ostringstream d;
        d << id << " " << relation_name(r) << ": distance tie between " << list[0].id << " and "
          << list[1].id;
        diagnostics_.push_back(d.str());
      }
    }
  }
}

const std::vector<NeighborEntry>& NeighborGraph::edge_list(const std::string& id,
                                                           Relation r) const {
  auto it = edges_.find(id);
  if (it == edges_.end()) throw Error("unknown object id " + id + " in graph");
  return it->second[static_cast<int>(r)];
}

std::vector<std::string> NeighborGraph::tie_front(const std::string& id, Relation r) const {
  const auto& list = edge_list(id, r);
  std::vector<std::string> front;
  for (const auto& e : list) {
    if (e.dist2 - list[0].dist2 > kTieEpsilon) break;
    front.push_back(e.id);
  }
  return front;
}

std::set<std::string> NeighborGraph::next_to(const std::string& id) const {
  std::set<std::string> out;
  for (Relation r : {Relation::Left, Relation::Right}) {
    for (const auto& n : tie_front(id, r)) out.insert(n);
  }
  // Symmetric closure: an object whose nearest lateral neighbor is `id` is
  // next to it even when `id` has a closer neighbor on that side.
  for (const auto& other : ordered_ids_) {
    if (other == id) continue;
    for (Relation r : {Relation::Left, Relation::Right}) {
      for (const auto& n : tie_front(other, r))
        if (n == id) out.insert(other);
    }
  }
  return out;
}

NeighborGraph build_graph(const SceneModel& scene, const std::string& viewpoint) {
  const Viewpoint& vp = scene.viewpoint(viewpoint);
  std::vector<std::string> ids = scene.ordered_ids();
  std::map<std::string, std::array<std::vector<NeighborEntry>, 6>> edges;
  for (const auto& id : ids) edges[id] = {};

  for (std::size_t i = 0; i < ids.size(); ++i) {
    const ObjectRecord& a = scene.object(ids[i]);
    for (std::size_t j = 0; j < ids.size(); ++j) {
      if (i == j) continue;
      const ObjectRecord& b = scene.object(ids[j]);
      Vec3 d = b.position - a.position;
      auto rel = classify_displacement(d, vp);
      if (!rel) continue;
      edges[a.id][static_cast<int>(*rel)].push_back({b.id, dot(d, d)});
    }
  }
  for (auto& [id, lists] : edges) {
    for (auto& list : lists) {
      std::sort(list.begin(), list.end(), [](const NeighborEntry& x, const NeighborEntry& y) {
        if (std::abs(x.dist2 - y.dist2) > kTieEpsilon) return x.dist2 < y.dist2;
        IdSuffix sx = id_suffix(x.id), sy = id_suffix(y.id);
        if (!(sx == sy)) return sx < sy;
        return x.id < y.id;
      });
    }
  }
  return NeighborGraph(vp, std::move(ids), std::move(edges));
}

namespace {

// Direction keys ordered by distance of their nearest neighbor, so the text
// reads nearest relation first.
std::vector<Relation> present_relations_by_distance(const NeighborGraph& g,
                                                    const std::string& id) {
  std::vector<std::pair<double, Relation>> present;
  for (Relation r : kAllRelations) {
    const auto& list = g.edge_list(id, r);
    if (!list.empty()) present.push_back({list[0].dist2, r});
  }
  std::stable_sort(present.begin(), present.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Relation> out;
  for (const auto& [d, r] : present) out.push_back(r);
  return out;
}

std::string join_front(const std::vector<std::string>& front) {
  std::string out;
  for (std::size_t i = 0; i < front.size(); ++i) {
    if (i) out += ", ";
    out += front[i];
  }
  return out;
}

}  // namespace

std::string render_graph(const NeighborGraph& graph, GraphEncoding encoding) {
  std::ostringstream out;
  if (encoding == GraphEncoding::CardinalJson) {
    // One object per line; compass keys in fixed N,S,E,W,U,D order.
    std::vector<std::pair<std::string, Relation>> order;
    for (const char* letter : {"N", "S", "E", "W", "U", "D"}) {
      for (Relation r : kAllRelations)
        if (cardinal_label(r, graph.viewpoint()) == letter) order.push_back({letter, r});
    }
    out << "{\n";
    bool first_obj = true;
    for (const auto& id : graph.ordered_ids()) {
      std::ostringstream entry;
      bool any = false;
      for (const auto& [letter, r] : order) {
        auto front = graph.tie_front(id, r);
        if (front.empty()) continue;
        if (any) entry << ", ";
        any = true;
        entry << "\"" << letter << "\":[";
        for (std::size_t i = 0; i < front.size(); ++i) {
          if (i) entry << ",";
          entry << "\"" << front[i] << "\"";
        }
        entry << "]";
      }
      if (!any) continue;
      if (!first_obj) out << ",\n";
      first_obj = false;
      out << "  \"" << id << "\":{ " << entry.str() << " }";
    }
    out << "\n}\n";
    return out.str();
  }

  for (const auto& id : graph.ordered_ids()) {
    auto rels = present_relations_by_distance(graph, id);
    // Depth-axis edges only appear in encodings that can express them.
    std::vector<std::string> parts;
    for (Relation r : rels) {
      auto front = graph.tie_front(id, r);
      std::string key = encoding == GraphEncoding::Language ? relation_name(r) + "="
                                                            : relation_axis_key(r) + "=";
      parts.push_back(key + " " + join_front(front));
    }
    if (parts.empty()) continue;
    out << id << " (";
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) out << ", ";
      out << parts[i];
    }
    out << ")\n";
  }
  return out.str();
}

std::string chain_walk(const NeighborGraph& graph, const std::string& start, Relation rel,
                       int k) {
  if (k < 0) throw Error("chain_walk requires k >= 0");
  std::string cur = start;
  for (int i = 0; i < k; ++i) {
    const auto& list = graph.edge_list(cur, rel);
    if (list.empty())
      throw Error("chain from " + start + " along " + relation_name(rel) + " is shorter than " +
                  std::to_string(k));
    cur = list[0].id;
  }
  return cur;
}

std::string cardinal_label(Relation r, const Viewpoint& vp) {
  if (r == Relation::Above) return "U";
  if (r == Relation::Below) return "D";
  Vec3 dir;
  switch (r) {
    case Relation::Left: dir = vp.left_axis(); break;
    case Relation::Right: dir = vp.left_axis(); dir = {-dir.x, -dir.y, -dir.z}; break;
    case Relation::Front: dir = vp.front_axis(); break;
    case Relation::Behind: dir = vp.front_axis(); dir = {-dir.x, -dir.y, -dir.z}; break;
    default: throw Error("bad relation");
  }
  // Snap to the nearest compass direction. North is world +Y, East +X.
  if (std::abs(dir.x) >= std::abs(dir.y)) return dir.x >= 0 ? "E" : "W";
  return dir.y >= 0 ? "N" : "S";
}

}  // namespace reground
