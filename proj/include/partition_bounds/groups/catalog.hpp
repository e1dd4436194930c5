#pragma once

#include <cctype>
#include <cstddef>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "partition_bounds/groups/constructions.hpp"
#include "partition_bounds/groups/finite_group.hpp"

namespace partition_bounds::groups {

/// Parses the group-spec text format:
///
///   order N
///   identity i
///   N rows of N space-separated element indices
///
/// Text after '#' on any line is ignored, as are blank lines.
inline FiniteGroup parse_group_spec(std::istream& in, std::string name = "file") {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
  }
  auto fail = [](const std::string& why) -> FiniteGroup { throw std::invalid_argument("group spec: " + why); };
  auto keyword = [&](std::size_t at, const char* word) {
    if (at >= lines.size()) fail(std::string("missing '") + word + "' line");
    std::istringstream s(lines[at]);
    std::string k;
    long long v = -1;
    std::string extra;
    if (!(s >> k >> v) || k != word || v < 0 || (s >> extra)) fail(std::string("expected '") + word + " <integer>'");
    return static_cast<std::size_t>(v);
  };
  const std::size_t n = keyword(0, "order");
  if (n == 0) fail("order must be positive");
  const std::size_t e = keyword(1, "identity");
  if (e >= n) fail("identity index out of range");
  if (lines.size() != n + 2) fail("expected " + std::to_string(n) + " table rows, found " + std::to_string(lines.size() - 2));
  std::vector<Element> table;
  table.reserve(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    std::istringstream s(lines[r + 2]);
    std::size_t count = 0;
    for (std::string tok; s >> tok; ++count) {
      if (tok.find_first_not_of("0123456789") != std::string::npos) fail("row " + std::to_string(r) + ": bad entry '" + tok + "'");
      table.push_back(static_cast<Element>(std::stoul(tok)));
    }
    if (count != n) fail("row " + std::to_string(r) + " has " + std::to_string(count) + " entries");
  }
  FiniteGroup g = FiniteGroup::from_table(n, std::move(table), std::move(name));
  if (g.identity() != e) fail("declared identity " + std::to_string(e) + " differs from table identity " + std::to_string(g.identity()));
  return g;
}

inline FiniteGroup load_group_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open group spec '" + path + "'");
  return parse_group_spec(in, path);
}

/// Writes a group in the spec format accepted by parse_group_spec.
inline std::string format_group_spec(const FiniteGroup& g) {
  std::ostringstream out;
  out << "order " << g.order() << "\nidentity " << g.identity() << "\n";
  for (Element a = 0; a < g.order(); ++a) {
    for (Element b = 0; b < g.order(); ++b) out << (b ? " " : "") << g.mul(a, b);
    out << "\n";
  }
  return out.str();
}

namespace detail {

inline std::size_t parse_size_arg(const std::string& text, const std::string& expr) {
  if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
    throw std::invalid_argument("group expression '" + expr + "': expected a positive integer");
  const std::size_t v = std::stoul(text);
  if (v == 0 || v > 100000) throw std::invalid_argument("group expression '" + expr + "': size out of range");
  return v;
}

}  // namespace detail

/// Builds a group from a constructor expression (cyclic:m, dihedral:m,
/// sym:k, alt:k, dic:m, product:X,Y[,...]) or, failing that, a spec file
/// path. Products fold left over their comma-separated factors.
inline FiniteGroup parse_group_expression(const std::string& expr) {
  const auto colon = expr.find(':');
  const std::string head = expr.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string() : expr.substr(colon + 1);
  if (colon != std::string::npos) {
    if (head == "cyclic") return cyclic(detail::parse_size_arg(arg, expr));
    if (head == "dihedral") return dihedral(detail::parse_size_arg(arg, expr));
    if (head == "sym") return symmetric(detail::parse_size_arg(arg, expr));
    if (head == "alt") return alternating(detail::parse_size_arg(arg, expr));
    if (head == "dic") return dicyclic(detail::parse_size_arg(arg, expr));
    if (head == "product") {
      std::vector<std::string> parts;
      std::stringstream s(arg);
      for (std::string p; std::getline(s, p, ',');) parts.push_back(p);
      if (parts.size() < 2) throw std::invalid_argument("group expression '" + expr + "': product needs two factors");
      FiniteGroup g = parse_group_expression(parts[0]);
      for (std::size_t i = 1; i < parts.size(); ++i) g = direct_product(g, parse_group_expression(parts[i]));
      return g;
    }
  }
  std::ifstream probe(expr);
  if (probe) return load_group_spec(expr);
  throw std::invalid_argument("unknown group expression or unreadable file '" + expr + "'");
}

/// One representative of each isomorphism class of order at most 12,
/// as constructor expressions.
inline const std::vector<std::string>& small_group_expressions() {
  static const std::vector<std::string> list = {
      "cyclic:1",  "cyclic:2",  "cyclic:3",  "cyclic:4",           "product:cyclic:2,cyclic:2",
      "cyclic:5",  "cyclic:6",  "sym:3",     "cyclic:7",           "cyclic:8",
      "product:cyclic:4,cyclic:2",         "product:cyclic:2,cyclic:2,cyclic:2",
      "dihedral:4", "dic:2",    "cyclic:9",  "product:cyclic:3,cyclic:3",
      "cyclic:10", "dihedral:5", "cyclic:11", "cyclic:12",         "product:cyclic:2,cyclic:6",
      "dihedral:6", "alt:4",    "dic:3",
  };
  return list;
}

/// The groups of order at most max_order, one per isomorphism class.
inline std::vector<FiniteGroup> small_groups(std::size_t max_order) {
  std::vector<FiniteGroup> out;
  for (const auto& e : small_group_expressions()) {
    FiniteGroup g = parse_group_expression(e);
    if (g.order() <= max_order) out.push_back(std::move(g));
  }
  return out;
}

}  // namespace partition_bounds::groups
