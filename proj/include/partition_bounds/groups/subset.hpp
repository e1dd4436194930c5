#pragma once

#include <boost/dynamic_bitset.hpp>

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "partition_bounds/groups/finite_group.hpp"

namespace partition_bounds::groups {

/// A subset of a finite group, stored as a membership bitset over element
/// indices. Holds a non-owning reference to its group.
class GroupSubset {
 public:
  using Bits = boost::dynamic_bitset<std::uint64_t>;

  explicit GroupSubset(const FiniteGroup& g) : group_(&g), bits_(g.order()) {}
  GroupSubset(const FiniteGroup& g, Bits bits) : group_(&g), bits_(std::move(bits)) {
    if (bits_.size() != g.order()) throw std::invalid_argument("bitset length must equal group order");
  }

  static GroupSubset full(const FiniteGroup& g) {
    GroupSubset s(g);
    s.bits_.set();
    return s;
  }

  static GroupSubset of(const FiniteGroup& g, std::initializer_list<Element> xs) {
    return of(g, std::vector<Element>(xs));
  }

  static GroupSubset of(const FiniteGroup& g, const std::vector<Element>& xs) {
    GroupSubset s(g);
    for (Element x : xs) s.insert(x);
    return s;
  }

  /// Subset whose members are the set bits of `mask` (bit i is element i).
  static GroupSubset from_mask(const FiniteGroup& g, std::uint64_t mask) {
    if (g.order() < 64 && (mask >> g.order()) != 0) throw std::invalid_argument("mask exceeds group order");
    GroupSubset s(g);
    for (std::size_t i = 0; i < g.order() && i < 64; ++i)
      if ((mask >> i) & 1) s.bits_.set(i);
    return s;
  }

  /// Parses a bitstring "b_0 b_1 ... b_{N-1}" where b_i = 1 marks element i.
  static GroupSubset from_bitstring(const FiniteGroup& g, const std::string& s) {
    if (s.size() != g.order())
      throw std::invalid_argument("bitstring length " + std::to_string(s.size()) + " does not match group order " +
                                  std::to_string(g.order()));
    GroupSubset out(g);
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') out.bits_.set(i);
      else if (s[i] != '0') throw std::invalid_argument("bitstring may contain only 0 and 1");
    }
    return out;
  }

  const FiniteGroup& group() const { return *group_; }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }
  bool contains(Element x) const { return bits_.test(x); }
  const Bits& bits() const { return bits_; }

  void insert(Element x) {
    if (x >= bits_.size()) throw std::out_of_range("element index out of range");
    bits_.set(x);
  }
  void erase(Element x) { bits_.reset(x); }

  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(size());
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) out.push_back(static_cast<Element>(i));
    return out;
  }

  /// Element i as character i; the canonical textual form.
  std::string to_bitstring() const {
    std::string s(bits_.size(), '0');
    for (std::size_t i = 0; i < bits_.size(); ++i)
      if (bits_.test(i)) s[i] = '1';
    return s;
  }

  bool is_subset_of(const GroupSubset& o) const {
    same_group(o);
    return bits_.is_subset_of(o.bits_);
  }
  bool intersects(const GroupSubset& o) const {
    same_group(o);
    return bits_.intersects(o.bits_);
  }

  GroupSubset operator|(const GroupSubset& o) const {
    same_group(o);
    return GroupSubset(*group_, bits_ | o.bits_);
  }
  GroupSubset operator&(const GroupSubset& o) const {
    same_group(o);
    return GroupSubset(*group_, bits_ & o.bits_);
  }
  GroupSubset operator-(const GroupSubset& o) const {
    same_group(o);
    return GroupSubset(*group_, bits_ - o.bits_);
  }
  GroupSubset complement() const { return GroupSubset(*group_, ~bits_); }

  bool operator==(const GroupSubset& o) const { return group_ == o.group_ && bits_ == o.bits_; }
  /// Orders by element-index lexicographic order of the member lists.
  bool lex_less(const GroupSubset& o) const { return elements() < o.elements(); }

  void same_group(const GroupSubset& o) const {
    if (group_ != o.group_) throw std::invalid_argument("subsets belong to different groups");
  }

 private:
  const FiniteGroup* group_;
  Bits bits_;
};

/// {ab : a in A, b in B}.
inline GroupSubset product_set(const GroupSubset& a, const GroupSubset& b) {
  a.same_group(b);
  const FiniteGroup& g = a.group();
  GroupSubset out(g);
  const auto bs = b.elements();
  for (Element x : a.elements())
    for (Element y : bs) out.insert(g.mul(x, y));
  return out;
}

inline GroupSubset inverse_set(const GroupSubset& a) {
  GroupSubset out(a.group());
  for (Element x : a.elements()) out.insert(a.group().inv(x));
  return out;
}

/// xA.
inline GroupSubset left_translate(Element x, const GroupSubset& a) {
  GroupSubset out(a.group());
  for (Element y : a.elements()) out.insert(a.group().mul(x, y));
  return out;
}

/// Ay.
inline GroupSubset right_translate(const GroupSubset& a, Element y) {
  GroupSubset out(a.group());
  for (Element x : a.elements()) out.insert(a.group().mul(x, y));
  return out;
}

/// xAy.
inline GroupSubset two_sided_translate(Element x, const GroupSubset& a, Element y) {
  GroupSubset out(a.group());
  for (Element z : a.elements()) out.insert(a.group().mul(a.group().mul(x, z), y));
  return out;
}

inline bool is_symmetric(const GroupSubset& a) { return inverse_set(a) == a; }

/// A^k for k >= 1, by binary exponentiation of the set product.
inline GroupSubset power(const GroupSubset& a, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("power: exponent must be at least 1");
  std::optional<GroupSubset> out;
  GroupSubset base = a;  // a^(2^j)
  while (true) {
    if (k & 1) out = out ? product_set(*out, base) : base;
    k >>= 1;
    if (!k) break;
    GroupSubset sq = product_set(base, base);
    // An idempotent base absorbs every remaining factor.
    if (sq == base) return out ? product_set(*out, base) : base;
    base = std::move(sq);
  }
  return *out;
}

/// A^(2^t) by t squarings, stopping once a square repeats.
inline GroupSubset power_of_two(const GroupSubset& a, std::uint64_t t) {
  GroupSubset cur = a;
  for (std::uint64_t i = 0; i < t; ++i) {
    GroupSubset next = product_set(cur, cur);
    if (next == cur) break;
    cur = std::move(next);
  }
  return cur;
}

/// The difference set Delta(A) = {x : A meets xA}, which equals AA^-1 for
/// the trivial ideal.
inline GroupSubset difference_set(const GroupSubset& a) {
  const FiniteGroup& g = a.group();
  GroupSubset out(g);
  for (Element x = 0; x < g.order(); ++x) {
    if (left_translate(x, a).intersects(a)) out.insert(x);
  }
  if (out != product_set(a, inverse_set(a))) throw std::logic_error("difference set differs from AA^-1");
  return out;
}

/// Subgroup test: nonempty and closed under products (finite groups).
inline bool is_subgroup(const GroupSubset& h) {
  if (h.empty()) return false;
  return product_set(h, h) == h;
}

}  // namespace partition_bounds::groups
