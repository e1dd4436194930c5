#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "partition_bounds/groups/subset.hpp"

namespace partition_bounds::groups {

enum class CoverMode { exact, greedy };

struct CovResult {
  std::size_t value = 0;
  GroupSubset witness;
  /// False for greedy results, which are only upper bounds.
  bool exact = true;
};

struct PackResult {
  std::size_t value = 0;
  GroupSubset witness;
};

namespace detail {

using Bits = GroupSubset::Bits;

inline std::vector<Bits> left_translates(const GroupSubset& a) {
  const FiniteGroup& g = a.group();
  std::vector<Bits> out;
  out.reserve(g.order());
  for (Element x = 0; x < g.order(); ++x) out.push_back(left_translate(x, a).bits());
  return out;
}

inline std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

class CoverSearch {
 public:
  CoverSearch(const GroupSubset& a, std::uint64_t node_cap)
      : n_(a.group().order()), k_(a.size()), translates_(left_translates(a)), node_cap_(node_cap) {
    // covering[u]: the x with u in xA, i.e. x in u A^-1, ascending.
    covering_.resize(n_);
    for (Element x = 0; x < n_; ++x)
      for (auto u = translates_[x].find_first(); u != Bits::npos; u = translates_[x].find_next(u))
        covering_[u].push_back(x);
  }

  std::vector<Element> greedy() const {
    Bits uncovered(n_);
    uncovered.set();
    std::vector<Element> chosen;
    while (uncovered.any()) {
      Element best = 0;
      std::size_t gain = 0;
      for (Element x = 0; x < n_; ++x) {
        const std::size_t c = (translates_[x] & uncovered).count();
        if (c > gain) {
          gain = c;
          best = x;
        }
      }
      chosen.push_back(best);
      uncovered -= translates_[best];
    }
    std::sort(chosen.begin(), chosen.end());
    return chosen;
  }

  /// Minimum cover size, by branching on the first uncovered element.
  /// Covers are closed under left translation, so some minimum cover
  /// contains element 0.
  std::size_t minimum(std::size_t upper) {
    best_ = upper;
    Bits uncovered(n_);
    uncovered.set();
    uncovered -= translates_[0];
    branch(uncovered, 1);
    return best_;
  }

  /// Lexicographically least cover with at most `size` elements (exactly
  /// `size` when that is the minimum), or empty if the node cap was hit.
  std::optional<std::vector<Element>> lex_least(std::size_t size) {
    nodes_ = 0;
    std::vector<Element> chosen{0};
    Bits uncovered(n_);
    uncovered.set();
    uncovered -= translates_[0];
    if (lex(uncovered, chosen, size)) return chosen;
    return std::nullopt;
  }

 private:
  void branch(const Bits& uncovered, std::size_t depth) {
    if (uncovered.none()) {
      best_ = std::min(best_, depth);
      return;
    }
    if (depth + ceil_div(uncovered.count(), k_) >= best_) return;
    const auto u = uncovered.find_first();
    // Order by fresh coverage, largest first.
    std::vector<std::pair<std::size_t, Element>> options;
    for (Element x : covering_[u]) options.emplace_back((translates_[x] & uncovered).count(), x);
    std::sort(options.begin(), options.end(), [](auto& l, auto& r) { return l.first != r.first ? l.first > r.first : l.second < r.second; });
    for (auto [gain, x] : options) {
      branch(uncovered - translates_[x], depth + 1);
      if (depth + ceil_div(uncovered.count(), k_) >= best_) return;
    }
  }

  bool lex(const Bits& uncovered, std::vector<Element>& chosen, std::size_t size) {
    if (++nodes_ > node_cap_) return false;
    if (uncovered.none()) return true;
    const std::size_t left = size - chosen.size();
    if (left == 0 || left * k_ < uncovered.count()) return false;
    const Element last = chosen.back();
    for (auto u = uncovered.find_first(); u != Bits::npos; u = uncovered.find_next(u))
      if (covering_[u].back() <= last) return false;
    for (Element x = last + 1; x < n_; ++x) {
      if (!translates_[x].intersects(uncovered)) continue;
      chosen.push_back(x);
      if (lex(uncovered - translates_[x], chosen, size)) return true;
      chosen.pop_back();
      if (nodes_ > node_cap_) return false;
    }
    return false;
  }

  std::size_t n_;
  std::size_t k_;
  std::vector<Bits> translates_;
  std::vector<std::vector<Element>> covering_;
  std::size_t best_ = 0;
  std::uint64_t nodes_ = 0;
  std::uint64_t node_cap_;
};

}  // namespace detail

/// cov(A): the least |F| with FA = G. Exact mode returns the
/// lexicographically least minimum witness.
inline CovResult covering_number(const GroupSubset& a, CoverMode mode = CoverMode::exact,
                                 std::uint64_t node_cap = 50'000'000) {
  if (a.empty()) throw std::invalid_argument("covering_number: A must be nonempty");
  const FiniteGroup& g = a.group();
  detail::CoverSearch search(a, node_cap);
  const auto greedy = search.greedy();
  if (mode == CoverMode::greedy) return {greedy.size(), GroupSubset::of(g, greedy), false};
  const std::size_t best = search.minimum(greedy.size());
  if (auto w = search.lex_least(best)) return {best, GroupSubset::of(g, *w), true};
  throw std::runtime_error("covering_number: witness search exceeded its node cap");
}

/// pack(A): the largest E with the translates xA (x in E) pairwise
/// disjoint. Returns the lexicographically least maximum witness.
inline PackResult packing_index(const GroupSubset& a) {
  if (a.empty()) throw std::invalid_argument("packing_index: A must be nonempty");
  const FiniteGroup& g = a.group();
  const std::size_t n = g.order();
  // x and y conflict iff x^-1 y lies in AA^-1.
  const GroupSubset d = product_set(a, inverse_set(a));
  std::vector<detail::Bits> conflict(n);
  for (Element x = 0; x < n; ++x) conflict[x] = left_translate(x, d).bits();

  std::vector<Element> best, cur;
  const std::size_t limit = n / a.size();
  // Depth-first over independent sets in lexicographic order; a record is
  // only replaced by a strictly larger set, so the first maximum found is
  // the least. Translating a maximum packing gives one containing 0.
  auto dfs = [&](auto&& self, const detail::Bits& cand) -> void {
    if (cur.size() > best.size()) best = cur;
    if (best.size() == limit) return;
    if (cur.size() + cand.count() <= best.size()) return;
    for (auto v = cand.find_first(); v != detail::Bits::npos; v = cand.find_next(v)) {
      detail::Bits rest = cand - conflict[v];
      rest.reset(0, v + 1);
      cur.push_back(static_cast<Element>(v));
      self(self, rest);
      cur.pop_back();
      if (best.size() == limit) return;
      // Remaining candidates after v.
      detail::Bits after = cand;
      after.reset(0, v + 1);
      if (cur.size() + after.count() <= best.size()) return;
    }
  };
  detail::Bits start(n);
  start.set();
  start -= conflict[0];
  cur.push_back(0);
  dfs(dfs, start);
  return {best.size(), GroupSubset::of(g, best)};
}

}  // namespace partition_bounds::groups
