#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "partition_bounds/groups/cover.hpp"
#include "partition_bounds/groups/subset.hpp"
#include "partition_bounds/numeric.hpp"

namespace partition_bounds::groups {

/// The subgroup generated by S (the trivial subgroup for empty S).
inline GroupSubset generated_subgroup(const GroupSubset& s) {
  GroupSubset h = s;
  h.insert(s.group().identity());
  while (true) {
    GroupSubset next = product_set(h, h);
    if (next == h) return h;
    h = std::move(next);
  }
}

/// Every subgroup of G, ordered by size and then lexicographically.
inline std::vector<GroupSubset> all_subgroups(const FiniteGroup& g) {
  auto key = [](const GroupSubset& h) { return std::make_pair(h.size(), h.elements()); };
  std::set<std::pair<std::size_t, std::vector<Element>>> seen;
  std::vector<GroupSubset> found{generated_subgroup(GroupSubset(g))};
  seen.insert(key(found[0]));
  for (std::size_t at = 0; at < found.size(); ++at) {
    for (Element x = 0; x < g.order(); ++x) {
      if (found[at].contains(x)) continue;
      GroupSubset with = found[at];
      with.insert(x);
      GroupSubset h = generated_subgroup(with);
      if (seen.insert(key(h)).second) found.push_back(std::move(h));
    }
  }
  std::vector<GroupSubset> out;
  for (const auto& [size, elems] : seen) out.push_back(GroupSubset::of(g, elems));
  return out;
}

enum class Conjugation {
  /// x A x^-1
  left,
  /// x^-1 A x
  right,
};

/// Union of the conjugates of A by the elements of E.
inline GroupSubset conjugation_closure(const GroupSubset& a, const GroupSubset& e,
                                       Conjugation direction = Conjugation::left) {
  a.same_group(e);
  if (e.empty()) throw std::invalid_argument("conjugation_closure: E must be nonempty");
  const FiniteGroup& g = a.group();
  GroupSubset out(g);
  for (Element x : e.elements()) {
    const Element l = direction == Conjugation::left ? x : g.inv(x);
    out = out | two_sided_translate(l, a, g.inv(l));
  }
  return out;
}

struct SubgroupPowerReport {
  bool is_symmetric = false;
  std::size_t cov = 0;
  /// 4^(cov - 1).
  BigNat power_exponent;
  GroupSubset power_set;
  bool is_subgroup = false;
  /// cov of the power set when it is a subgroup.
  std::optional<std::size_t> index;
};

/// Computes A^(4^(k-1)) for symmetric A with k = cov(A) and tests whether
/// it is a subgroup. Since A is symmetric, e lies in A^2 and the even
/// powers increase, so 2(k-1) squarings reach the power exactly.
inline SubgroupPowerReport subgroup_power_check(const GroupSubset& a) {
  if (a.empty()) throw std::invalid_argument("subgroup_power_check: A must be nonempty");
  if (!is_symmetric(a)) throw std::invalid_argument("subgroup_power_check: A must be symmetric");
  SubgroupPowerReport r{true, covering_number(a).value, 0, power_of_two(a, 0), false, std::nullopt};
  mpz_ui_pow_ui(r.power_exponent.get_mpz_t(), 4, r.cov - 1);
  r.power_set = power_of_two(a, 2 * (r.cov - 1));
  r.is_subgroup = is_subgroup(r.power_set);
  if (r.is_subgroup) r.index = covering_number(r.power_set).value;
  return r;
}

/// True iff A = xHy for a subgroup H; then A^-1 A is a subgroup and A is
/// one of its left cosets.
inline bool is_shifted_subgroup(const GroupSubset& a) {
  if (a.empty()) return false;
  const GroupSubset h = product_set(inverse_set(a), a);
  if (!is_subgroup(h)) return false;
  return left_translate(a.elements().front(), h) == a;
}

struct NeumannResult {
  std::size_t index = 0;
  std::size_t cov = 0;
};

/// For a cover of G by shifted subgroups, returns the first cell whose
/// covering number is at most the number of cells.
inline NeumannResult neumann_check(const std::vector<GroupSubset>& cover) {
  if (cover.empty()) throw std::invalid_argument("neumann_check: cover is empty");
  const FiniteGroup& g = cover.front().group();
  GroupSubset u(g);
  for (std::size_t i = 0; i < cover.size(); ++i) {
    if (!is_shifted_subgroup(cover[i]))
      throw std::invalid_argument("neumann_check: cell " + std::to_string(i) + " is not a shifted subgroup");
    u = u | cover[i];
  }
  if (u.size() != g.order()) throw std::invalid_argument("neumann_check: cells do not cover the group");
  for (std::size_t i = 0; i < cover.size(); ++i) {
    const std::size_t c = covering_number(cover[i]).value;
    if (c <= cover.size()) return {i, c};
  }
  throw std::logic_error("neumann_check: no cell with cov <= n");
}

}  // namespace partition_bounds::groups
