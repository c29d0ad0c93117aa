#include "reground/response_parse.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

namespace reground {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_bullet(std::string s) {
  s = trim(s);
  while (!s.empty() && (s[0] == '-' || s[0] == '*' || s[0] == '>')) s = trim(s.substr(1));
  return s;
}

std::string strip_parentheticals(const std::string& s) {
  std::string out;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    else if (c == ')') { if (depth > 0) --depth; }
    else if (depth == 0) out += c;
  }
  return out;
}

std::vector<std::string> alnum_tokens(const std::string& s) {
  std::vector<std::string> tokens;
  std::string cur;
  for (char c : s) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      cur += c;
    } else if (!cur.empty()) {
      tokens.push_back(cur);
      cur.clear();
    }
  }
  if (!cur.empty()) tokens.push_back(cur);
  return tokens;
}

std::vector<std::string> known_ids_in(const std::string& s,
                                      const std::set<std::string>& known_ids) {
  std::vector<std::string> out;
  for (const auto& tok : alnum_tokens(s)) {
    if (known_ids.count(tok) && std::find(out.begin(), out.end(), tok) == out.end())
      out.push_back(tok);
  }
  return out;
}

// Finds the separator between referring expression and answer. The arrow
// (UTF-8 or ASCII) wins; a colon or spaced dash only counts when it splits
// the line into two non-empty halves.
std::optional<std::pair<std::string, std::string>> split_re_line(const std::string& line) {
  for (const std::string& arrow : {std::string("→"), std::string("->")}) {
    std::size_t pos = line.find(arrow);
    if (pos != std::string::npos)
      return std::make_pair(trim(line.substr(0, pos)), trim(line.substr(pos + arrow.size())));
  }
  for (const std::string& sep : {std::string(": "), std::string(" - ")}) {
    std::size_t pos = line.find(sep);
    if (pos != std::string::npos) {
      std::string left = trim(line.substr(0, pos));
      std::string right = trim(line.substr(pos + sep.size()));
      if (!left.empty() && !right.empty()) return std::make_pair(left, right);
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<GroundingLine> parse_grounding_response(const std::string& text,
                                                    const std::set<std::string>& known_ids) {
  std::vector<GroundingLine> out;
  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = strip_bullet(raw);
    if (line.empty()) continue;
    auto parts = split_re_line(line);
    if (parts) {
      GroundingLine entry;
      entry.re_text = parts->first;
      entry.ids = known_ids_in(parts->second, known_ids);
      entry.unparsed = entry.ids.empty();
      out.push_back(std::move(entry));
    } else {
      // No separator: keep only if the line itself names a known id.
      auto ids = known_ids_in(line, known_ids);
      if (!ids.empty()) out.push_back({"", std::move(ids), false});
    }
  }
  return out;
}

namespace {

// Expands "object27-object35" style spans into their members before
// tokenization would split them apart.
std::vector<std::string> storage_ids_in(const std::string& segment, const SceneModel& scene) {
  static const std::regex range_re(R"(([A-Za-z]+)([0-9]+)\s*-\s*([A-Za-z]+)([0-9]+))");
  std::vector<std::string> out;
  auto push_unique = [&](const std::string& id) {
    if (scene.has_object(id) && std::find(out.begin(), out.end(), id) == out.end())
      out.push_back(id);
  };

  std::string rest = segment;
  std::smatch m;
  std::string scanned;
  while (std::regex_search(rest, m, range_re)) {
    scanned += m.prefix().str();
    if (m[1].str() == m[3].str()) {
      long lo = std::stol(m[2].str());
      long hi = std::stol(m[4].str());
      for (long n = lo; n <= hi; ++n) push_unique(m[1].str() + std::to_string(n));
    } else {
      scanned += m.str();  // mismatched prefixes: treat as plain tokens
    }
    rest = m.suffix().str();
  }
  scanned += rest;
  for (const auto& tok : alnum_tokens(scanned)) push_unique(tok);
  return out;
}

std::vector<std::string> split_arrows(const std::string& line) {
  std::vector<std::string> segments;
  std::string rest = line;
  while (true) {
    std::size_t pos = rest.find("→");
    std::size_t len = 3;
    std::size_t ascii = rest.find("->");
    if (ascii != std::string::npos && (pos == std::string::npos || ascii < pos)) {
      pos = ascii;
      len = 2;
    }
    if (pos == std::string::npos) break;
    segments.push_back(trim(rest.substr(0, pos)));
    rest = rest.substr(pos + len);
  }
  segments.push_back(trim(rest));
  return segments;
}

}  // namespace

StorageParse parse_storage_response(const std::string& text, const SceneModel& scene) {
  StorageParse result;
  std::optional<int> current_type;

  std::istringstream in(text);
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = strip_bullet(raw);
    if (line.empty()) continue;

    static const std::regex type_re(R"(^Type\s+([1-9])\b)");
    std::smatch tm;
    if (std::regex_search(line, tm, type_re)) {
      current_type = std::stoi(tm[1].str());
      continue;
    }

    auto segments = split_arrows(line);
    if (segments.size() == 1) continue;  // commentary line, no arrows
    if (segments.size() != 3) {
      result.unparsed.push_back(line);
      continue;
    }
    StorageSuggestion s;
    s.re_text = segments[0];
    s.objects = storage_ids_in(strip_parentheticals(segments[1]), scene);
    s.locations = storage_ids_in(strip_parentheticals(segments[2]), scene);
    s.type_class = current_type;
    if (s.re_text.empty() || s.objects.empty() || s.locations.empty()) {
      result.unparsed.push_back(line);
      continue;
    }
    result.suggestions.push_back(std::move(s));
  }
  return result;
}

}  // namespace reground
