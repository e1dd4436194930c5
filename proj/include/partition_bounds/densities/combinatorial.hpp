#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "partition_bounds/densities/measure.hpp"
#include "partition_bounds/groups/subset.hpp"

namespace partition_bounds::densities {

using DensityFunction = std::function<Rational(const GroupSubset&)>;

inline constexpr std::size_t kSubadditiveCap = 12;

struct SubadditiveResult {
  Rational value;
  /// Lexicographically least B attaining the supremum.
  GroupSubset maximizer;
};

/// The subadditivization sup over B of base(A | B) - base(B), by
/// exhausting all 2^N subsets B. Base values are memoized.
inline SubadditiveResult subadditivization(const DensityFunction& base, const GroupSubset& a,
                                           std::size_t cap = kSubadditiveCap) {
  const FiniteGroup& g = a.group();
  const std::size_t n = g.order();
  if (n > cap) throw std::invalid_argument("subadditivization: order exceeds the exhaustive cap");
  std::map<GroupSubset::Bits, Rational> memo;
  auto eval = [&](const GroupSubset& s) -> const Rational& {
    auto it = memo.find(s.bits());
    if (it == memo.end()) it = memo.emplace(s.bits(), base(s)).first;
    return it->second;
  };
  std::optional<Rational> best;
  std::vector<Element> best_b;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const GroupSubset b = GroupSubset::from_mask(g, mask);
    const Rational v = eval(a | b) - eval(b);
    const auto el = b.elements();
    if (!best || v > *best || (v == *best && el < best_b)) {
      best = v;
      best_b = el;
    }
  }
  return {*best, GroupSubset::of(g, best_b)};
}

struct KelleyResult {
  /// Infimum over all m <= m_max.
  Rational value;
  /// per_m[m-1]: the infimum over tuples of exactly m translates.
  std::vector<Rational> per_m;
  /// Translating elements x of a tuple attaining `value`.
  std::vector<Element> tuple;
  std::uint64_t tuples = 0;
};

/// Kelley's intersection number of the family {xA} restricted to tuples
/// of length at most m_max: the least over tuples (A_1..A_m) of
/// max_x (1/m) #{i : x in A_i}. Tuples are enumerated as multisets of
/// distinct translates.
inline KelleyResult kelley_intersection(const GroupSubset& a, std::size_t m_max,
                                        std::uint64_t budget = 50'000'000) {
  if (m_max == 0) throw std::invalid_argument("kelley_intersection: m_max must be at least 1");
  const FiniteGroup& g = a.group();
  const std::size_t n = g.order();
  KelleyResult res;
  if (a.empty()) {
    res.value = 0;
    res.per_m.assign(m_max, Rational(0));
    res.tuple.assign(1, 0);
    return res;
  }
  // Distinct translates with the least x producing each.
  std::vector<std::pair<GroupSubset::Bits, Element>> family;
  {
    std::set<GroupSubset::Bits> seen;
    for (Element x = 0; x < n; ++x) {
      auto bits = groups::left_translate(x, a).bits();
      if (seen.insert(bits).second) family.emplace_back(std::move(bits), x);
    }
  }
  std::vector<std::size_t> count(n, 0);
  std::vector<Element> pick;
  std::optional<Rational> best;
  for (std::size_t m = 1; m <= m_max; ++m) {
    std::optional<std::size_t> best_top;
    std::vector<Element> best_pick;
    auto rec = [&](auto&& self, std::size_t from) -> void {
      if (pick.size() == m) {
        if (++res.tuples > budget) throw std::runtime_error("kelley_intersection: tuple budget exceeded");
        const std::size_t top = *std::max_element(count.begin(), count.end());
        if (!best_top || top < *best_top) {
          best_top = top;
          best_pick = pick;
        }
        return;
      }
      for (std::size_t i = from; i < family.size(); ++i) {
        const auto& bits = family[i].first;
        for (auto x = bits.find_first(); x != GroupSubset::Bits::npos; x = bits.find_next(x)) ++count[x];
        pick.push_back(family[i].second);
        self(self, i);
        pick.pop_back();
        for (auto x = bits.find_first(); x != GroupSubset::Bits::npos; x = bits.find_next(x)) --count[x];
      }
    };
    rec(rec, 0);
    const Rational v = make_rational(static_cast<long>(*best_top), static_cast<long>(m));
    res.per_m.push_back(v);
    if (!best || v < *best) {
      best = v;
      res.tuple = best_pick;
    }
  }
  res.value = *best;
  return res;
}

/// The lexicographically least (k, m), 0 <= k < m <= len, with
/// x_{k+1} ... x_m in AA^-1, or nothing.
inline std::optional<std::pair<std::size_t, std::size_t>> ipstar_window_check(const GroupSubset& a,
                                                                              const std::vector<Element>& seq) {
  if (seq.empty()) throw std::invalid_argument("ipstar_window_check: sequence must be nonempty");
  const FiniteGroup& g = a.group();
  for (Element x : seq)
    if (x >= g.order()) throw std::invalid_argument("ipstar_window_check: element out of range");
  const GroupSubset d = groups::product_set(a, groups::inverse_set(a));
  for (std::size_t k = 0; k < seq.size(); ++k) {
    Element prod = g.identity();
    for (std::size_t m = k + 1; m <= seq.size(); ++m) {
      prod = g.mul(prod, seq[m - 1]);
      if (d.contains(prod)) return std::make_pair(k, m);
    }
  }
  return std::nullopt;
}

}  // namespace partition_bounds::densities
