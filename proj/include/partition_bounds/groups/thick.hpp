#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "partition_bounds/groups/subset.hpp"

namespace partition_bounds::groups {

/// True iff every F with |F| <= m has some x with Fx inside A, i.e. the
/// sets f^-1 A (f in F) always share a point.
///
/// Fx lies in A iff (F f^-1)(f x) does, so F may be assumed to contain the
/// identity.
inline bool is_m_thick(const GroupSubset& a, std::size_t m) {
  if (m == 0) throw std::invalid_argument("is_m_thick: m must be at least 1");
  const FiniteGroup& g = a.group();
  const std::size_t n = g.order();
  if (a.empty()) return false;
  std::vector<GroupSubset::Bits> pre(n);  // pre[f] = f^-1 A
  for (Element f = 0; f < n; ++f) pre[f] = left_translate(g.inv(f), a).bits();
  const Element e = g.identity();
  auto dfs = [&](auto&& self, Element from, std::size_t left, const GroupSubset::Bits& common) -> bool {
    if (common.none()) return false;
    if (left == 0) return true;
    for (Element f = from; f < n; ++f) {
      if (f == e) continue;
      if (!self(self, f + 1, left - 1, common & pre[f])) return false;
    }
    return true;
  };
  return dfs(dfs, 0, std::min(m, n) - 1, pre[e]);
}

/// The smallest F (lexicographically least among those), with
/// |F| <= size_cap, for which FA is m-thick. Left translates of FA are
/// m-thick together with FA, so F may be assumed to contain element 0.
inline std::optional<GroupSubset> thick_shift_witness(const GroupSubset& a, std::size_t m, std::size_t size_cap) {
  const FiniteGroup& g = a.group();
  const std::size_t n = g.order();
  if (a.empty() || size_cap == 0) return std::nullopt;
  size_cap = std::min(size_cap, n);
  std::vector<Element> pick{0};
  std::optional<GroupSubset> found;
  auto dfs = [&](auto&& self, Element from, std::size_t size) -> bool {
    if (pick.size() == size) {
      GroupSubset f = GroupSubset::of(g, pick);
      if (is_m_thick(product_set(f, a), m)) {
        found = std::move(f);
        return true;
      }
      return false;
    }
    for (Element x = from; x < n; ++x) {
      pick.push_back(x);
      if (self(self, x + 1, size)) return true;
      pick.pop_back();
    }
    return false;
  };
  for (std::size_t size = 1; size <= size_cap; ++size) {
    pick.assign(1, 0);
    if (dfs(dfs, 1, size)) return found;
  }
  return std::nullopt;
}

}  // namespace partition_bounds::groups
