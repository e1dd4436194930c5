#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "partition_bounds/groups/finite_group.hpp"

namespace partition_bounds::groups {

/// A permutation of {0, ..., degree-1} in image form: p[i] is the image of i.
using Permutation = std::vector<Element>;

inline constexpr std::size_t kDefaultClosureCap = 5040;

inline bool is_permutation(const Permutation& p) {
  std::vector<char> seen(p.size());
  for (Element x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

/// (p * q)(x) = p(q(x)): q is applied first.
inline Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
  return r;
}

/// Cycle notation with 1-based points, "e" for the identity.
inline std::string cycle_string(const Permutation& p) {
  std::string out;
  std::vector<char> done(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (done[i] || p[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!done[j]) {
      done[j] = 1;
      if (!first) out += p.size() > 9 ? " " : "";
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

namespace detail {

inline FiniteGroup permutation_group(const std::vector<Permutation>& elements, std::string name) {
  std::map<Permutation, Element> index;
  for (std::size_t i = 0; i < elements.size(); ++i) index.emplace(elements[i], static_cast<Element>(i));
  const std::size_t n = elements.size();
  std::vector<Element> table(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t a = 0; a < n; ++a) {
    labels[a] = cycle_string(elements[a]);
    for (std::size_t b = 0; b < n; ++b) {
      auto it = index.find(compose(elements[a], elements[b]));
      if (it == index.end()) throw std::invalid_argument("permutation set is not closed");
      table[a * n + b] = it->second;
    }
  }
  return FiniteGroup::from_table(n, std::move(table), std::move(name), std::move(labels));
}

}  // namespace detail

/// Z_m with element k standing for k mod m.
inline FiniteGroup cyclic(std::size_t m) {
  if (m == 0) throw std::invalid_argument("cyclic: order must be positive");
  std::vector<Element> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) table[a * m + b] = static_cast<Element>((a + b) % m);
  return FiniteGroup::from_table(m, std::move(table), "cyclic:" + std::to_string(m));
}

/// The dihedral group of order 2m. Element a*m + b is s^a r^b, with
/// r of order m, s of order 2 and s r s = r^-1.
inline FiniteGroup dihedral(std::size_t m) {
  if (m == 0) throw std::invalid_argument("dihedral: m must be positive");
  const std::size_t n = 2 * m;
  std::vector<Element> table(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    const std::size_t a = x / m, b = x % m;
    labels[x] = x == 0 ? "e" : (a ? std::string("s") : std::string()) + (b ? "r" + (b > 1 ? std::to_string(b) : "") : "");
    for (std::size_t y = 0; y < n; ++y) {
      const std::size_t c = y / m, d = y % m;
      // r^b s^c = s^c r^{±b}
      const std::size_t rot = (c ? (m - b) % m : b);
      table[x * n + y] = static_cast<Element>(((a + c) % 2) * m + (rot + d) % m);
    }
  }
  return FiniteGroup::from_table(n, std::move(table), "dihedral:" + std::to_string(m), std::move(labels));
}

/// All permutations of k points in lexicographic order of image form; the
/// identity is element 0.
inline FiniteGroup symmetric(std::size_t k, std::size_t cap = kDefaultClosureCap) {
  if (k == 0) throw std::invalid_argument("symmetric: degree must be positive");
  std::size_t order = 1;
  for (std::size_t i = 2; i <= k; ++i) {
    order *= i;
    if (order > cap) throw std::invalid_argument("symmetric: order exceeds cap " + std::to_string(cap));
  }
  std::vector<Permutation> elements;
  Permutation p(k);
  std::iota(p.begin(), p.end(), Element{0});
  do elements.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return detail::permutation_group(elements, "sym:" + std::to_string(k));
}

inline bool is_even(const Permutation& p) {
  std::size_t inversions = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) inversions += p[i] > p[j];
  return inversions % 2 == 0;
}

/// Even permutations of k points, in lexicographic order.
inline FiniteGroup alternating(std::size_t k, std::size_t cap = kDefaultClosureCap) {
  if (k == 0) throw std::invalid_argument("alternating: degree must be positive");
  std::size_t order = 1;
  for (std::size_t i = 3; i <= k; ++i) {
    order *= i;
    if (order > cap) throw std::invalid_argument("alternating: order exceeds cap " + std::to_string(cap));
  }
  std::vector<Permutation> elements;
  Permutation p(k);
  std::iota(p.begin(), p.end(), Element{0});
  do
    if (is_even(p)) elements.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return detail::permutation_group(elements, "alt:" + std::to_string(k));
}

/// The dicyclic group of order 4m: <a, x | a^{2m} = 1, x^2 = a^m, x a x^-1 = a^-1>.
/// Element j*2m + k is a^k x^j. dicyclic(2) is the quaternion group.
inline FiniteGroup dicyclic(std::size_t m) {
  if (m < 1) throw std::invalid_argument("dicyclic: m must be positive");
  const std::size_t half = 2 * m, n = 4 * m;
  std::vector<Element> table(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t u = 0; u < n; ++u) {
    const std::size_t j = u / half, k = u % half;
    labels[u] = u == 0 ? "e" : (k ? "a" + (k > 1 ? std::to_string(k) : std::string()) : std::string()) + (j ? "x" : "");
    for (std::size_t v = 0; v < n; ++v) {
      const std::size_t i = v / half, l = v % half;
      std::size_t exp, xs;
      if (j == 0) {
        exp = k + l;
        xs = i;
      } else {
        // x a^l = a^-l x
        exp = k + half - l;
        xs = 1 + i;
        if (xs == 2) {
          exp += m;
          xs = 0;
        }
      }
      table[u * n + v] = static_cast<Element>(xs * half + exp % half);
    }
  }
  return FiniteGroup::from_table(n, std::move(table), "dic:" + std::to_string(m), std::move(labels));
}

/// G x H with element g*|H| + h standing for (g, h).
inline FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h) {
  const std::size_t ng = g.order(), nh = h.order(), n = ng * nh;
  std::vector<Element> table(n * n);
  std::vector<std::string> labels(n);
  for (std::size_t x = 0; x < n; ++x) {
    const auto a = static_cast<Element>(x / nh), b = static_cast<Element>(x % nh);
    labels[x] = "(" + g.label(a) + "," + h.label(b) + ")";
    for (std::size_t y = 0; y < n; ++y) {
      const auto c = static_cast<Element>(y / nh), d = static_cast<Element>(y % nh);
      table[x * n + y] = static_cast<Element>(g.mul(a, c) * nh + h.mul(b, d));
    }
  }
  return FiniteGroup::from_table(n, std::move(table), "product:" + g.name() + "," + h.name(), std::move(labels));
}

/// Closure of the given permutations under composition, by breadth-first
/// multiplication from the identity. Element 0 is the identity; the rest
/// appear in discovery order.
inline FiniteGroup group_from_generators(std::size_t degree, const std::vector<Permutation>& generators,
                                         std::size_t cap = kDefaultClosureCap) {
  if (degree == 0) throw std::invalid_argument("group_from_generators: degree must be positive");
  for (const auto& p : generators) {
    if (p.size() != degree || !is_permutation(p))
      throw std::invalid_argument("group_from_generators: invalid permutation");
  }
  Permutation id(degree);
  std::iota(id.begin(), id.end(), Element{0});
  std::vector<Permutation> elements{id};
  std::map<Permutation, Element> seen{{id, 0}};
  for (std::size_t at = 0; at < elements.size(); ++at) {
    for (const auto& s : generators) {
      Permutation next = compose(elements[at], s);
      if (seen.emplace(next, static_cast<Element>(elements.size())).second) {
        if (elements.size() >= cap)
          throw std::invalid_argument("group_from_generators: closure exceeds cap " + std::to_string(cap));
        elements.push_back(std::move(next));
      }
    }
  }
  return detail::permutation_group(elements, "generated:" + std::to_string(degree));
}

/// Parses cycle notation with 1-based points, e.g. "(12)(34)" or "(1 2 10)".
/// Adjacent single digits are separate points unless spaces or commas are
/// used as separators.
inline Permutation parse_cycles(const std::string& text, std::size_t degree) {
  Permutation p(degree);
  std::iota(p.begin(), p.end(), Element{0});
  std::size_t i = 0;
  auto fail = [&](const std::string& why) { throw std::invalid_argument("cycle notation '" + text + "': " + why); };
  while (i < text.size()) {
    if (text[i] == ' ') {
      ++i;
      continue;
    }
    if (text[i] != '(') fail("expected '('");
    const std::size_t close = text.find(')', i);
    if (close == std::string::npos) fail("unbalanced parenthesis");
    const std::string body = text.substr(i + 1, close - i - 1);
    std::vector<Element> pts;
    const bool separated = body.find_first_of(" ,") != std::string::npos;
    if (separated) {
      std::size_t j = 0;
      while (j < body.size()) {
        while (j < body.size() && (body[j] == ' ' || body[j] == ',')) ++j;
        std::size_t k = j;
        while (k < body.size() && std::isdigit(static_cast<unsigned char>(body[k]))) ++k;
        if (k == j) {
          if (j < body.size()) fail("unexpected character");
          break;
        }
        pts.push_back(static_cast<Element>(std::stoul(body.substr(j, k - j))));
        j = k;
      }
    } else {
      for (char c : body) {
        if (!std::isdigit(static_cast<unsigned char>(c))) fail("unexpected character");
        pts.push_back(static_cast<Element>(c - '0'));
      }
    }
    for (Element& x : pts) {
      if (x < 1 || x > degree) fail("point out of range");
      --x;
    }
    std::vector<Element> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) fail("repeated point in a cycle");
    Permutation cyc(degree);
    std::iota(cyc.begin(), cyc.end(), Element{0});
    for (std::size_t k = 0; k < pts.size(); ++k) cyc[pts[k]] = pts[(k + 1) % pts.size()];
    // Cycles compose right to left, as in (12)(23).
    p = compose(p, cyc);
    i = close + 1;
  }
  return p;
}

}  // namespace partition_bounds::groups
