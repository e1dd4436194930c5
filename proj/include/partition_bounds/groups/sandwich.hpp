#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "partition_bounds/groups/cover.hpp"
#include "partition_bounds/groups/subset.hpp"
#include "partition_bounds/numeric.hpp"

namespace partition_bounds::groups {

/// Exact test of f < (2 - s + 2 sqrt(1 - s)) / s^2 for 0 < s <= 1.
inline bool below_single_set_bound(std::size_t f, const Rational& s) {
  if (s <= 0 || s > 1) throw std::invalid_argument("density must lie in (0, 1]");
  // f s^2 - 2 + s < 2 sqrt(1 - s)
  const Rational lhs = Rational(static_cast<long>(f)) * s * s - 2 + s;
  if (lhs < 0) return true;
  return lhs * lhs < 4 * (1 - s);
}

/// Exact test of |B| |A|^2 < 27 / (4 s^3).
inline bool below_pair_bound(std::size_t b, std::size_t a, const Rational& s) {
  if (s <= 0) throw std::invalid_argument("density must be positive");
  return Rational(static_cast<long>(4 * b * a * a)) * s * s * s < 27;
}

struct SandwichWitness {
  /// G = B A D^2 A^-1 with D = P^-1 P.
  std::optional<GroupSubset> a;
  std::optional<GroupSubset> b;
  /// G = F D^2 F^-1.
  std::optional<GroupSubset> f;
};

struct SandwichCaps {
  /// Largest |A| (respectively |F|) tried; the bounds usually stop earlier.
  std::size_t max_size = 8;
};

/// XYZ^-1 style products reduce to unions of two-sided translates.
inline GroupSubset conjugate_sandwich(const GroupSubset& left, const GroupSubset& middle) {
  const FiniteGroup& g = middle.group();
  GroupSubset out(g);
  for (Element x : left.elements())
    for (Element y : left.elements()) out = out | two_sided_translate(x, middle, g.inv(y));
  return out;
}

namespace detail {

/// Calls visit on each subset of size k containing element 0, in
/// lexicographic order, until it returns true.
template <class Visit>
bool subsets_with_zero(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<Element> pick{0};
  auto rec = [&](auto&& self, Element from) -> bool {
    if (pick.size() == k) return visit(pick);
    for (Element x = from; x < n; ++x) {
      pick.push_back(x);
      if (self(self, x + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return k >= 1 && k <= n && rec(rec, 1);
}

}  // namespace detail

/// Searches both sandwich-cover forms for P with density s.
///
/// Pair form: A by increasing size then lexicographically; for fixed A the
/// least |B| is cov(A D^2 A^-1), with the lexicographically least minimum
/// cover as B. Single-set form: F by increasing size then lexicographically.
/// Left-translating A or F preserves both properties, so only sets
/// containing element 0 are tried.
inline SandwichWitness sandwich_cover_witness(const GroupSubset& p, const Rational& s, const SandwichCaps& caps = {}) {
  if (p.empty()) throw std::invalid_argument("sandwich_cover_witness: P must be nonempty");
  const FiniteGroup& g = p.group();
  const std::size_t n = g.order();
  const GroupSubset d = product_set(inverse_set(p), p);
  const GroupSubset d2 = product_set(d, d);
  SandwichWitness w;

  for (std::size_t k = 1; k <= std::min(caps.max_size, n) && below_pair_bound(1, k, s) && !w.a; ++k) {
    detail::subsets_with_zero(n, k, [&](const std::vector<Element>& pick) {
      const GroupSubset a = GroupSubset::of(g, pick);
      const GroupSubset middle = conjugate_sandwich(a, d2);
      const CovResult cover = covering_number(middle);
      if (!below_pair_bound(cover.value, k, s)) return false;
      w.a = a;
      w.b = cover.witness;
      return true;
    });
  }

  for (std::size_t k = 1; k <= std::min(caps.max_size, n) && below_single_set_bound(k, s) && !w.f; ++k) {
    detail::subsets_with_zero(n, k, [&](const std::vector<Element>& pick) {
      const GroupSubset f = GroupSubset::of(g, pick);
      if (conjugate_sandwich(f, d2).size() != n) return false;
      w.f = f;
      return true;
    });
  }
  return w;
}

}  // namespace partition_bounds::groups
