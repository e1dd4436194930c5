#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace partition_bounds::groups {

using Element = std::uint32_t;

/// A finite group given by its Cayley table over element indices 0..N-1.
///
/// Instances are immutable once constructed. Every constructor path runs
/// through `from_table`, which rejects tables that are not Latin squares,
/// lack a two-sided identity, or fail associativity (checked on all triples
/// for N <= 64 and on 10 N^2 random triples above that).
class FiniteGroup {
 public:
  static constexpr std::size_t kFullAssociativityLimit = 64;

  FiniteGroup() = default;

  static FiniteGroup from_table(std::size_t order, std::vector<Element> table, std::string name = {},
                                std::vector<std::string> labels = {}) {
    if (order == 0) throw std::invalid_argument("group order must be positive");
    if (table.size() != order * order) throw std::invalid_argument("Cayley table must be N x N");
    if (!labels.empty() && labels.size() != order) throw std::invalid_argument("label count must equal order");
    FiniteGroup g;
    g.n_ = order;
    g.table_ = std::move(table);
    g.name_ = std::move(name);
    g.labels_ = std::move(labels);
    g.validate();
    return g;
  }

  std::size_t order() const { return n_; }
  Element identity() const { return identity_; }
  const std::string& name() const { return name_; }

  Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * n_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }

  Element pow(Element a, std::uint64_t k) const {
    Element r = identity_;
    Element base = a;
    while (k) {
      if (k & 1) r = mul(r, base);
      base = mul(base, base);
      k >>= 1;
    }
    return r;
  }

  std::size_t element_order(Element a) const {
    std::size_t k = 1;
    for (Element x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  std::string label(Element a) const { return labels_.empty() ? std::to_string(a) : labels_[a]; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::vector<Element>& table() const { return table_; }

  bool is_abelian() const {
    for (Element a = 0; a < n_; ++a)
      for (Element b = a + 1; b < n_; ++b)
        if (mul(a, b) != mul(b, a)) return false;
    return true;
  }

  /// Tables are compared, not labels or names.
  bool same_table(const FiniteGroup& other) const { return n_ == other.n_ && table_ == other.table_; }

 private:
  void validate() {
    std::vector<char> seen(n_);
    for (std::size_t a = 0; a < n_; ++a) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t b = 0; b < n_; ++b) {
        const Element x = table_[a * n_ + b];
        if (x >= n_) throw std::invalid_argument("Cayley table entry out of range");
        if (seen[x]++) throw std::invalid_argument("Cayley table is not a Latin square (row " + std::to_string(a) + ")");
      }
    }
    for (std::size_t b = 0; b < n_; ++b) {
      std::fill(seen.begin(), seen.end(), 0);
      for (std::size_t a = 0; a < n_; ++a) {
        if (seen[table_[a * n_ + b]]++)
          throw std::invalid_argument("Cayley table is not a Latin square (column " + std::to_string(b) + ")");
      }
    }
    std::optional<Element> e;
    for (Element a = 0; a < n_ && !e; ++a) {
      bool ok = true;
      for (Element b = 0; b < n_ && ok; ++b) ok = mul(a, b) == b && mul(b, a) == b;
      if (ok) e = a;
    }
    if (!e) throw std::invalid_argument("Cayley table has no identity");
    identity_ = *e;
    inverse_.assign(n_, 0);
    for (Element a = 0; a < n_; ++a) {
      for (Element b = 0; b < n_; ++b) {
        if (mul(a, b) == identity_) {
          inverse_[a] = b;
          break;
        }
      }
      if (mul(inverse_[a], a) != identity_) throw std::invalid_argument("inverse is not two-sided");
    }
    auto assoc = [&](Element a, Element b, Element c) {
      if (mul(mul(a, b), c) != mul(a, mul(b, c)))
        throw std::invalid_argument("Cayley table is not associative at (" + std::to_string(a) + "," +
                                    std::to_string(b) + "," + std::to_string(c) + ")");
    };
    const auto n = static_cast<Element>(n_);
    if (n_ <= kFullAssociativityLimit) {
      for (Element a = 0; a < n; ++a)
        for (Element b = 0; b < n; ++b)
          for (Element c = 0; c < n; ++c) assoc(a, b, c);
    } else {
      std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ n_);
      std::uniform_int_distribution<Element> pick(0, n - 1);
      for (std::size_t t = 0; t < 10 * n_ * n_; ++t) assoc(pick(rng), pick(rng), pick(rng));
    }
  }

  std::size_t n_ = 0;
  std::vector<Element> table_;
  std::vector<Element> inverse_;
  Element identity_ = 0;
  std::string name_;
  std::vector<std::string> labels_;
};

}  // namespace partition_bounds::groups
