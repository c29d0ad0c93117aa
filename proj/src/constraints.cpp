#include "reground/constraints.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "reground/errors.hpp"

namespace reground {

std::string query_rel_name(QueryRel r) {
  switch (r) {
    case QueryRel::LeftOf: return "left-of";
    case QueryRel::RightOf: return "right-of";
    case QueryRel::Above: return "above";
    case QueryRel::Below: return "below";
    case QueryRel::NextTo: return "next-to";
  }
  throw Error("bad query relation");
}

bool operator==(const Query& a, const Query& b) {
  if (a.constraints.size() != b.constraints.size()) return false;
  for (std::size_t i = 0; i < a.constraints.size(); ++i) {
    const Constraint& ca = a.constraints[i];
    const Constraint& cb = b.constraints[i];
    if (ca.index() != cb.index()) return false;
    bool eq = std::visit(
        [&](const auto& x) -> bool {
          using T = std::decay_t<decltype(x)>;
          const T& y = std::get<T>(cb);
          if constexpr (std::is_same_v<T, CategoryConstraint>) {
            return x.name == y.name;
          } else if constexpr (std::is_same_v<T, RelConstraint>) {
            return x.rel == y.rel && x.ordinal == y.ordinal && *x.anchor == *y.anchor;
          } else if constexpr (std::is_same_v<T, BandConstraint>) {
            return x.band == y.band;
          } else if constexpr (std::is_same_v<T, StackConstraint>) {
            return x.kind == y.kind && x.n == y.n;
          } else {
            return x.key == y.key && x.value == y.value;
          }
        },
        ca);
    if (!eq) return false;
  }
  return true;
}

int query_depth(const Query& q) {
  int depth = 1;
  for (const auto& c : q.constraints) {
    if (const auto* rel = std::get_if<RelConstraint>(&c))
      depth = std::max(depth, 1 + query_depth(*rel->anchor));
  }
  return depth;
}

namespace {

struct Lexer {
  const std::string& text;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool at_end() {
    skip_ws();
    return pos >= text.size();
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  void expect(char c) {
    skip_ws();
    if (pos >= text.size() || text[pos] != c)
      throw ParseError(std::string("expected '") + c + "'", pos);
    ++pos;
  }
  std::string token() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    if (pos == start) throw ParseError("expected a token", pos);
    return text.substr(start, pos - start);
  }
};

Query parse_select(Lexer& lex, int depth);

Constraint parse_constraint(Lexer& lex, int depth) {
  std::size_t open = lex.pos;
  lex.expect('(');
  std::string head = lex.token();
  if (head == "category") {
    std::string name = lex.token();
    lex.expect(')');
    return CategoryConstraint{name};
  }
  if (head == "rel") {
    std::size_t rel_pos = lex.pos;
    std::string rel_name = lex.token();
    QueryRel rel;
    if (rel_name == "left-of") rel = QueryRel::LeftOf;
    else if (rel_name == "right-of") rel = QueryRel::RightOf;
    else if (rel_name == "above") rel = QueryRel::Above;
    else if (rel_name == "below") rel = QueryRel::Below;
    else if (rel_name == "next-to") rel = QueryRel::NextTo;
    else throw ParseError("unknown relation '" + rel_name + "'", rel_pos);
    auto anchor = std::make_shared<Query>(parse_select(lex, depth + 1));
    int ordinal = 0;
    if (lex.peek() != ')') {
      std::size_t kw_pos = lex.pos;
      std::string kw = lex.token();
      if (kw != "ordinal") throw ParseError("expected 'ordinal' or ')'", kw_pos);
      std::size_t num_pos = lex.pos;
      std::string num = lex.token();
      try {
        ordinal = std::stoi(num);
      } catch (...) {
        throw ParseError("ordinal must be an integer", num_pos);
      }
      if (ordinal < 1) throw ParseError("ordinal must be >= 1", num_pos);
    }
    lex.expect(')');
    return RelConstraint{rel, std::move(anchor), ordinal};
  }
  if (head == "band") {
    std::size_t band_pos = lex.pos;
    std::string which = lex.token();
    lex.expect(')');
    if (which == "high") return BandConstraint{Band::High};
    if (which == "low") return BandConstraint{Band::Low};
    throw ParseError("unknown band '" + which + "'", band_pos);
  }
  if (head == "stack") {
    std::size_t kind_pos = lex.pos;
    std::string which = lex.token();
    lex.expect(')');
    if (which == "top") return StackConstraint{StackKind::Top};
    if (which == "middle") return StackConstraint{StackKind::Middle};
    if (which == "bottom") return StackConstraint{StackKind::Bottom};
    try {
      int n = std::stoi(which);
      if (n < 1) throw ParseError("stack index must be >= 1", kind_pos);
      return StackConstraint{StackKind::NthFromTop, n};
    } catch (const ParseError&) {
      throw;
    } catch (...) {
      throw ParseError("unknown stack position '" + which + "'", kind_pos);
    }
  }
  if (head == "fact") {
    std::string key = lex.token();
    std::string value = lex.token();
    lex.expect(')');
    return FactConstraint{key, value};
  }
  throw ParseError("unknown constraint '" + head + "'", open);
}

Query parse_select(Lexer& lex, int depth) {
  if (depth > kMaxQueryDepth) throw ParseError("query nests deeper than 4 selects", lex.pos);
  lex.expect('(');
  std::size_t head_pos = lex.pos;
  std::string head = lex.token();
  if (head != "select") throw ParseError("expected 'select'", head_pos);
  Query q;
  while (lex.peek() != ')') q.constraints.push_back(parse_constraint(lex, depth));
  lex.expect(')');
  if (q.constraints.empty()) throw ParseError("select needs at least one constraint", head_pos);
  return q;
}

void print_into(const Query& q, std::ostringstream& out) {
  out << "(select";
  for (const auto& c : q.constraints) {
    out << " ";
    std::visit(
        [&](const auto& x) {
          using T = std::decay_t<decltype(x)>;
          if constexpr (std::is_same_v<T, CategoryConstraint>) {
            out << "(category " << x.name << ")";
          } else if constexpr (std::is_same_v<T, RelConstraint>) {
            out << "(rel " << query_rel_name(x.rel) << " ";
            print_into(*x.anchor, out);
            if (x.ordinal > 0) out << " ordinal " << x.ordinal;
            out << ")";
          } else if constexpr (std::is_same_v<T, BandConstraint>) {
            out << "(band " << (x.band == Band::High ? "high" : "low") << ")";
          } else if constexpr (std::is_same_v<T, StackConstraint>) {
            out << "(stack ";
            switch (x.kind) {
              case StackKind::Top: out << "top"; break;
              case StackKind::Middle: out << "middle"; break;
              case StackKind::Bottom: out << "bottom"; break;
              case StackKind::NthFromTop: out << x.n; break;
            }
            out << ")";
          } else {
            out << "(fact " << x.key << " " << x.value << ")";
          }
        },
        c);
  }
  out << ")";
}

}  // namespace

Query parse_query(const std::string& text) {
  if (text.empty()) throw ParseError("empty query", 0);
  Lexer lex{text};
  Query q = parse_select(lex, 1);
  if (!lex.at_end()) throw ParseError("trailing input after query", lex.pos);
  return q;
}

std::string print_query(const Query& q) {
  std::ostringstream out;
  print_into(q, out);
  return out.str();
}

}  // namespace reground
