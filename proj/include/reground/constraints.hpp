#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace reground {

// Relations usable in a query. NextTo is the derived symmetric lateral
// adjacency; the others follow graph edges.
enum class QueryRel { LeftOf, RightOf, Above, Below, NextTo };

std::string query_rel_name(QueryRel r);

enum class Band { High, Low };

enum class StackKind { Top, Middle, Bottom, NthFromTop };

struct Query;

struct CategoryConstraint {
  std::string name;
};

struct RelConstraint {
  QueryRel rel;
  std::shared_ptr<const Query> anchor;
  int ordinal = 0;  // 0 = unspecified ("nearest surviving")
};

struct BandConstraint {
  Band band;
};

struct StackConstraint {
  StackKind kind;
  int n = 0;  // for NthFromTop, 1-based
};

struct FactConstraint {
  std::string key;
  std::string value;
};

using Constraint = std::variant<CategoryConstraint, RelConstraint, BandConstraint,
                                StackConstraint, FactConstraint>;

// A conjunction of constraints; anchors nest to depth at most kMaxQueryDepth.
struct Query {
  std::vector<Constraint> constraints;
};

inline constexpr int kMaxQueryDepth = 4;

bool operator==(const Query& a, const Query& b);

// S-expression concrete syntax:
//   QUERY      := "(select" CONSTRAINT+ ")"
//   CONSTRAINT := "(category" NAME ")"
//              |  "(rel" REL QUERY ["ordinal" INT] ")"
//              |  "(band" ("high"|"low") ")"
//              |  "(stack" ("top"|"middle"|"bottom"|INT) ")"
//              |  "(fact" KEY VALUE ")"
//   REL        := "left-of" | "right-of" | "above" | "below" | "next-to"
Query parse_query(const std::string& text);

// Canonical form; parse_query(print_query(q)) == q.
std::string print_query(const Query& q);

int query_depth(const Query& q);

}  // namespace reground
