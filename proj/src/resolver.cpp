#include "reground/resolver.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "reground/errors.hpp"

namespace reground {

namespace {

constexpr double kStackTolerance = 0.05;

std::vector<std::string> in_canonical_order(const std::set<std::string>& ids,
                                            const SceneModel& scene) {
  std::vector<std::string> out;
  for (const auto& id : scene.ordered_ids())
    if (ids.count(id)) out.push_back(id);
  return out;
}

std::string join_ids(const std::vector<std::string>& ids) {
  std::string out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) out += ", ";
    out += ids[i];
  }
  return out.empty() ? "(none)" : out;
}

bool band_matches(const ObjectRecord& o, Band band, double counter_height) {
  return band == Band::High ? o.position.z > counter_height : o.position.z < counter_height;
}

// Objects sharing the survivor's lateral position, tallest first.
std::vector<std::string> vertical_stack(const SceneModel& scene, const std::string& id) {
  const ObjectRecord& self = scene.object(id);
  std::vector<const ObjectRecord*> members;
  for (const auto& o : scene.objects()) {
    if (std::abs(o.position.x - self.position.x) <= kStackTolerance &&
        std::abs(o.position.y - self.position.y) <= kStackTolerance)
      members.push_back(&o);
  }
  std::sort(members.begin(), members.end(), [](const ObjectRecord* a, const ObjectRecord* b) {
    if (a->position.z != b->position.z) return a->position.z > b->position.z;
    return a->id < b->id;
  });
  std::vector<std::string> out;
  for (const auto* m : members) out.push_back(m->id);
  return out;
}

bool stack_matches(const SceneModel& scene, const std::string& id, const StackConstraint& c) {
  std::vector<std::string> stack = vertical_stack(scene, id);
  auto it = std::find(stack.begin(), stack.end(), id);
  std::size_t index = static_cast<std::size_t>(it - stack.begin());
  std::size_t n = stack.size();
  switch (c.kind) {
    case StackKind::Top: return index == 0;
    case StackKind::Bottom: return index == n - 1;
    case StackKind::Middle: {
      if (n < 3) return false;
      return index == (n - 1) / 2 || index == n / 2;
    }
    case StackKind::NthFromTop: return index + 1 == static_cast<std::size_t>(c.n);
  }
  return false;
}

std::string stack_name(const StackConstraint& c) {
  switch (c.kind) {
    case StackKind::Top: return "top";
    case StackKind::Middle: return "middle";
    case StackKind::Bottom: return "bottom";
    case StackKind::NthFromTop: return std::to_string(c.n) + "-from-top";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Graph-backed resolution.
// ---------------------------------------------------------------------------

Relation to_graph_relation(QueryRel r) {
  switch (r) {
    case QueryRel::LeftOf: return Relation::Left;
    case QueryRel::RightOf: return Relation::Right;
    case QueryRel::Above: return Relation::Above;
    case QueryRel::Below: return Relation::Below;
    default: throw Error("next-to has no single graph relation");
  }
}

// Objects exactly k adjacency steps from the anchor set.
std::set<std::string> graph_shell_walk(const NeighborGraph& graph,
                                       const std::set<std::string>& anchors, QueryRel rel,
                                       int steps) {
  std::set<std::string> shell = anchors;
  std::set<std::string> visited = anchors;  // used by the symmetric next-to walk
  for (int i = 0; i < steps; ++i) {
    std::set<std::string> next;
    for (const auto& id : shell) {
      if (rel == QueryRel::NextTo) {
        for (const auto& n : graph.next_to(id))
          if (!visited.count(n)) next.insert(n);
      } else {
        for (const auto& n : graph.tie_front(id, to_graph_relation(rel))) next.insert(n);
      }
    }
    for (const auto& n : next) visited.insert(n);
    shell = std::move(next);
    if (shell.empty()) break;
  }
  return shell;
}

GroundingResult resolve_impl(const Query& query, const SceneModel& scene,
                             const NeighborGraph& graph, int depth) {
  if (depth > kMaxQueryDepth) throw Error("query anchors nest deeper than 4");
  GroundingResult result;
  std::set<std::string> candidates;
  for (const auto& id : scene.ordered_ids()) candidates.insert(id);
  result.trace.push_back("start: " + std::to_string(candidates.size()) + " objects");

  // Plain attribute filters first, relations next, stack positions last.
  for (const auto& c : query.constraints) {
    if (const auto* cat = std::get_if<CategoryConstraint>(&c)) {
      std::erase_if(candidates,
                    [&](const std::string& id) { return scene.object(id).category != cat->name; });
      result.trace.push_back("category " + cat->name + ": " +
                             join_ids(in_canonical_order(candidates, scene)));
    } else if (const auto* band = std::get_if<BandConstraint>(&c)) {
      std::erase_if(candidates, [&](const std::string& id) {
        return !band_matches(scene.object(id), band->band, scene.counter_height());
      });
      result.trace.push_back(std::string("band ") + (band->band == Band::High ? "high" : "low") +
                             ": " + join_ids(in_canonical_order(candidates, scene)));
    } else if (const auto* fact = std::get_if<FactConstraint>(&c)) {
      std::erase_if(candidates, [&](const std::string& id) {
        const auto& facts = scene.object(id).facts;
        auto it = facts.find(fact->key);
        return it == facts.end() || it->second != fact->value;
      });
      result.trace.push_back("fact " + fact->key + "=" + fact->value + ": " +
                             join_ids(in_canonical_order(candidates, scene)));
    }
  }

  for (const auto& c : query.constraints) {
    const auto* rel = std::get_if<RelConstraint>(&c);
    if (!rel) continue;
    GroundingResult anchor = resolve_impl(*rel->anchor, scene, graph, depth + 1);
    if (anchor.matches.empty())
      throw UnresolvableError("anchor " + print_query(*rel->anchor) + " matched nothing");
    std::set<std::string> anchors(anchor.matches.begin(), anchor.matches.end());
    result.trace.push_back("rel " + query_rel_name(rel->rel) + " anchor: " +
                           join_ids(anchor.matches));

    std::set<std::string> kept;
    if (rel->ordinal > 0) {
      std::set<std::string> shell = graph_shell_walk(graph, anchors, rel->rel, rel->ordinal);
      for (const auto& id : shell)
        if (candidates.count(id)) kept.insert(id);
    } else {
      // No ordinal: nearest surviving candidate along the chain.
      std::set<std::string> shell = anchors;
      std::set<std::string> visited = anchors;
      for (std::size_t step = 1; step <= scene.objects().size(); ++step) {
        std::set<std::string> next;
        for (const auto& id : shell) {
          if (rel->rel == QueryRel::NextTo) {
            for (const auto& n : graph.next_to(id))
              if (!visited.count(n)) next.insert(n);
          } else {
            for (const auto& n : graph.tie_front(id, to_graph_relation(rel->rel)))
              next.insert(n);
          }
        }
        for (const auto& n : next) visited.insert(n);
        shell = std::move(next);
        if (shell.empty()) break;
        std::set<std::string> hit;
        for (const auto& id : shell)
          if (candidates.count(id)) hit.insert(id);
        if (!hit.empty()) {
          kept = std::move(hit);
          break;
        }
      }
    }
    candidates = std::move(kept);
    result.trace.push_back("rel " + query_rel_name(rel->rel) +
                           (rel->ordinal > 0 ? " ordinal " + std::to_string(rel->ordinal) : "") +
                           ": " + join_ids(in_canonical_order(candidates, scene)));
  }

  for (const auto& c : query.constraints) {
    const auto* stack = std::get_if<StackConstraint>(&c);
    if (!stack) continue;
    std::erase_if(candidates,
                  [&](const std::string& id) { return !stack_matches(scene, id, *stack); });
    result.trace.push_back("stack " + stack_name(*stack) + ": " +
                           join_ids(in_canonical_order(candidates, scene)));
  }

  result.matches = in_canonical_order(candidates, scene);
  result.ambiguous = result.matches.size() > 1;
  return result;
}

// ---------------------------------------------------------------------------
// Brute-force oracle: identical semantics recomputed from raw geometry on
// every step. Deliberately shares no code with the graph path.
// ---------------------------------------------------------------------------

struct OracleFrame {
  Vec3 left, front, up;
};

int oracle_direction(const Vec3& d, const OracleFrame& f) {
  // 0..5 = left, right, above, below, front, behind; -1 = no dominant axis.
  double lat = d.x * f.left.x + d.y * f.left.y + d.z * f.left.z;
  double dep = d.x * f.front.x + d.y * f.front.y + d.z * f.front.z;
  double vert = d.x * f.up.x + d.y * f.up.y + d.z * f.up.z;
  double al = std::abs(lat), ad = std::abs(dep), av = std::abs(vert);
  if (al > ad && al > av) return lat > 0 ? 0 : 1;
  if (av > al && av > ad) return vert > 0 ? 2 : 3;
  if (ad > al && ad > av) return dep > 0 ? 4 : 5;
  return -1;
}

std::set<std::string> oracle_front(const SceneModel& scene, const OracleFrame& f,
                                   const std::string& from, int direction) {
  const ObjectRecord& a = scene.object(from);
  double best = -1.0;
  std::vector<std::pair<double, std::string>> hits;
  for (const auto& o : scene.objects()) {
    if (o.id == from) continue;
    Vec3 d = o.position - a.position;
    if (oracle_direction(d, f) != direction) continue;
    double dist2 = dot(d, d);
    hits.push_back({dist2, o.id});
    if (best < 0 || dist2 < best) best = dist2;
  }
  std::set<std::string> out;
  for (const auto& [dist2, id] : hits)
    if (dist2 - best <= kTieEpsilon) out.insert(id);
  return out;
}

std::set<std::string> oracle_next_to(const SceneModel& scene, const OracleFrame& f,
                                     const std::string& id) {
  std::set<std::string> out;
  for (int dir : {0, 1})
    for (const auto& n : oracle_front(scene, f, id, dir)) out.insert(n);
  for (const auto& o : scene.objects()) {
    if (o.id == id) continue;
    for (int dir : {0, 1})
      if (oracle_front(scene, f, o.id, dir).count(id)) out.insert(o.id);
  }
  return out;
}

int oracle_query_direction(QueryRel r) {
  switch (r) {
    case QueryRel::LeftOf: return 0;
    case QueryRel::RightOf: return 1;
    case QueryRel::Above: return 2;
    case QueryRel::Below: return 3;
    default: return -1;
  }
}

GroundingResult oracle_impl(const Query& query, const SceneModel& scene, const OracleFrame& f,
                            int depth) {
  if (depth > kMaxQueryDepth) throw Error("query anchors nest deeper than 4");
  GroundingResult result;
  std::set<std::string> candidates;
  for (const auto& o : scene.objects()) candidates.insert(o.id);
  result.trace.push_back("oracle start: " + std::to_string(candidates.size()) + " objects");

  for (const auto& c : query.constraints) {
    if (const auto* cat = std::get_if<CategoryConstraint>(&c)) {
      for (auto it = candidates.begin(); it != candidates.end();) {
        if (scene.object(*it).category != cat->name)
          it = candidates.erase(it);
        else
          ++it;
      }
    } else if (const auto* band = std::get_if<BandConstraint>(&c)) {
      for (auto it = candidates.begin(); it != candidates.end();) {
        const ObjectRecord& o = scene.object(*it);
        bool high = o.position.z > scene.counter_height();
        bool low = o.position.z < scene.counter_height();
        bool keep = band->band == Band::High ? high : low;
        if (!keep)
          it = candidates.erase(it);
        else
          ++it;
      }
    } else if (const auto* fact = std::get_if<FactConstraint>(&c)) {
      for (auto it = candidates.begin(); it != candidates.end();) {
        const auto& facts = scene.object(*it).facts;
        auto fit = facts.find(fact->key);
        if (fit == facts.end() || fit->second != fact->value)
          it = candidates.erase(it);
        else
          ++it;
      }
    }
  }

  for (const auto& c : query.constraints) {
    const auto* rel = std::get_if<RelConstraint>(&c);
    if (!rel) continue;
    GroundingResult anchor = oracle_impl(*rel->anchor, scene, f, depth + 1);
    if (anchor.matches.empty())
      throw UnresolvableError("anchor " + print_query(*rel->anchor) + " matched nothing");
    std::set<std::string> shell(anchor.matches.begin(), anchor.matches.end());
    std::set<std::string> visited = shell;
    int direction = oracle_query_direction(rel->rel);

    std::set<std::string> kept;
    std::size_t max_steps =
        rel->ordinal > 0 ? static_cast<std::size_t>(rel->ordinal) : scene.objects().size();
    for (std::size_t step = 1; step <= max_steps; ++step) {
      std::set<std::string> next;
      for (const auto& id : shell) {
        if (direction < 0) {
          for (const auto& n : oracle_next_to(scene, f, id))
            if (!visited.count(n)) next.insert(n);
        } else {
          for (const auto& n : oracle_front(scene, f, id, direction)) next.insert(n);
        }
      }
      for (const auto& n : next) visited.insert(n);
      shell = std::move(next);
      if (shell.empty()) break;
      if (rel->ordinal > 0) {
        if (step == max_steps) {
          for (const auto& id : shell)
            if (candidates.count(id)) kept.insert(id);
        }
      } else {
        std::set<std::string> hit;
        for (const auto& id : shell)
          if (candidates.count(id)) hit.insert(id);
        if (!hit.empty()) {
          kept = std::move(hit);
          break;
        }
      }
    }
    candidates = std::move(kept);
  }

  for (const auto& c : query.constraints) {
    const auto* stack = std::get_if<StackConstraint>(&c);
    if (!stack) continue;
    for (auto it = candidates.begin(); it != candidates.end();) {
      // Recompute the stack by scanning lateral positions.
      const ObjectRecord& self = scene.object(*it);
      std::vector<std::pair<double, std::string>> stack_members;
      for (const auto& o : scene.objects()) {
        if (std::abs(o.position.x - self.position.x) <= kStackTolerance &&
            std::abs(o.position.y - self.position.y) <= kStackTolerance)
          stack_members.push_back({-o.position.z, o.id});
      }
      std::sort(stack_members.begin(), stack_members.end());
      std::size_t index = 0, n = stack_members.size();
      for (std::size_t i = 0; i < n; ++i)
        if (stack_members[i].second == *it) index = i;
      bool keep = false;
      switch (stack->kind) {
        case StackKind::Top: keep = index == 0; break;
        case StackKind::Bottom: keep = index == n - 1; break;
        case StackKind::Middle:
          keep = n >= 3 && (index == (n - 1) / 2 || index == n / 2);
          break;
        case StackKind::NthFromTop:
          keep = index + 1 == static_cast<std::size_t>(stack->n);
          break;
      }
      if (!keep)
        it = candidates.erase(it);
      else
        ++it;
    }
  }

  result.matches = in_canonical_order(candidates, scene);
  result.ambiguous = result.matches.size() > 1;
  result.trace.push_back("oracle end: " + join_ids(result.matches));
  return result;
}

}  // namespace

GroundingResult resolve(const Query& query, const SceneModel& scene,
                        const NeighborGraph& graph) {
  for (const auto& id : graph.ordered_ids())
    if (!scene.has_object(id)) throw Error("graph id " + id + " missing from scene");
  if (query_depth(query) > kMaxQueryDepth) throw Error("query anchors nest deeper than 4");
  return resolve_impl(query, scene, graph, 1);
}

GroundingResult brute_oracle(const Query& query, const SceneModel& scene,
                             const std::string& viewpoint) {
  if (scene.objects().size() > 50) throw Error("oracle limited to 50 objects");
  if (query_depth(query) > kMaxQueryDepth) throw Error("query anchors nest deeper than 4");
  const Viewpoint& vp = scene.viewpoint(viewpoint);
  Vec3 up{0, 0, 1};
  OracleFrame f{normalized(cross(up, vp.facing)), normalized(vp.facing), up};
  return oracle_impl(query, scene, f, 1);
}

}  // namespace reground
