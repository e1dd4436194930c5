#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "partition_bounds/densities/measure.hpp"
#include "partition_bounds/densities/simplex.hpp"
#include "partition_bounds/groups/subset.hpp"

namespace partition_bounds::densities {

struct ExactDensity {
  Rational value;
  /// Optimal measure where the density is an optimum over measures.
  std::optional<Measure> witness;
};

namespace detail {

/// Value of min over measures on G of max over the given sets S of mu(S).
inline ExactDensity min_max_measure(const FiniteGroup& g, const std::vector<GroupSubset::Bits>& sets) {
  Matrix<Rational> payoff(sets.size(), std::vector<Rational>(g.order(), Rational(0)));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t x = 0; x < g.order(); ++x)
      if (sets[i].test(x)) payoff[i][x] = 1;
  auto game = solve_game(payoff);
  return {game.value, Measure(g, std::move(game.col))};
}

/// Value of max over measures on G of min over the given sets S of mu(S).
inline ExactDensity max_min_measure(const FiniteGroup& g, const std::vector<GroupSubset::Bits>& sets) {
  Matrix<Rational> payoff(g.order(), std::vector<Rational>(sets.size(), Rational(0)));
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t x = 0; x < g.order(); ++x)
      if (sets[i].test(x)) payoff[x][i] = 1;
  auto game = solve_game(payoff);
  return {game.value, Measure(g, std::move(game.row))};
}

inline std::vector<GroupSubset::Bits> distinct(std::vector<GroupSubset::Bits> sets) {
  std::set<GroupSubset::Bits> seen(sets.begin(), sets.end());
  return {seen.begin(), seen.end()};
}

}  // namespace detail

/// is12(A) = min over mu of max over y of mu(Ay).
inline ExactDensity is12(const GroupSubset& a) {
  const FiniteGroup& g = a.group();
  if (a.empty()) return {Rational(0), std::nullopt};
  std::vector<GroupSubset::Bits> sets;
  for (Element y = 0; y < g.order(); ++y) sets.push_back(groups::right_translate(a, y).bits());
  return detail::min_max_measure(g, detail::distinct(std::move(sets)));
}

/// si21(A) = max over mu of min over x of mu(xA).
inline ExactDensity si21(const GroupSubset& a) {
  const FiniteGroup& g = a.group();
  if (a.empty()) return {Rational(0), std::nullopt};
  std::vector<GroupSubset::Bits> sets;
  for (Element x = 0; x < g.order(); ++x) sets.push_back(groups::left_translate(x, a).bits());
  return detail::max_min_measure(g, detail::distinct(std::move(sets)));
}

/// iss213(A) = min over mu of max over x, y of mu(xAy); identical
/// two-sided translates enter the LP once.
inline ExactDensity iss213(const GroupSubset& a) {
  const FiniteGroup& g = a.group();
  if (a.empty()) return {Rational(0), std::nullopt};
  std::set<GroupSubset::Bits> sets;
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y) sets.insert(groups::two_sided_translate(x, a, y).bits());
  return detail::min_max_measure(g, {sets.begin(), sets.end()});
}

inline constexpr std::size_t kUs12ExhaustiveCap = 16;

struct Us12Result {
  Rational value;
  /// Lexicographically least minimizing F.
  GroupSubset witness;
  /// False when F was restricted by a size cap, giving an upper bound.
  bool exact = true;
};

/// us12(A) = min over nonempty F of max over y of |Fy & A| / |F|.
/// Exhaustive up to the order cap; above it, only F with |F| <= size_cap
/// are tried and the result is an upper bound.
inline Us12Result us12(const GroupSubset& a, std::size_t exhaustive_cap = kUs12ExhaustiveCap,
                       std::optional<std::size_t> size_cap = std::nullopt) {
  const FiniteGroup& g = a.group();
  const std::size_t n = g.order();
  const bool exhaustive = n <= exhaustive_cap && (!size_cap || *size_cap >= n);
  if (!exhaustive && !size_cap) throw std::invalid_argument("us12: order exceeds the exhaustive cap; give a size cap");
  const std::size_t max_size = exhaustive ? n : std::min(*size_cap, n);

  // y-columns: for each f, the point fy; Fy & A is counted via membership of fy.
  std::vector<GroupSubset::Bits> hits(n, GroupSubset::Bits(n));  // hits[f] = {y : fy in A}
  for (Element f = 0; f < n; ++f)
    for (Element y = 0; y < n; ++y)
      if (a.contains(g.mul(f, y))) hits[f].set(y);

  std::optional<Rational> best;
  std::vector<Element> best_f;
  std::vector<Element> pick;
  std::vector<std::size_t> count(n, 0);
  auto visit = [&]() {
    const std::size_t top = *std::max_element(count.begin(), count.end());
    const Rational v = make_rational(static_cast<long>(top), static_cast<long>(pick.size()));
    if (!best || v < *best || (v == *best && pick < best_f)) {
      best = v;
      best_f = pick;
    }
  };
  auto rec = [&](auto&& self, Element from) -> void {
    for (Element f = from; f < n; ++f) {
      pick.push_back(f);
      for (auto y = hits[f].find_first(); y != GroupSubset::Bits::npos; y = hits[f].find_next(y)) ++count[y];
      visit();
      if (pick.size() < max_size) self(self, f + 1);
      for (auto y = hits[f].find_first(); y != GroupSubset::Bits::npos; y = hits[f].find_next(y)) --count[y];
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return {*best, GroupSubset::of(g, best_f), exhaustive};
}

}  // namespace partition_bounds::densities
