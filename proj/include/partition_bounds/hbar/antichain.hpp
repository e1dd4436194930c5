#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "partition_bounds/hbar/packed_vector.hpp"

namespace partition_bounds::hbar {

/// How vector sets are stored during saturation.
///
/// `exact` keeps every member of h^[m](i). `minimal` keeps only the
/// coordinatewise-minimal members; since any sum built from a larger vector
/// is dominated by the same sum built from a smaller one, the minimal
/// elements of h^[m+1](i) are a function of the minimal elements of the
/// h^[m](j) alone, and the zero vector (the global minimum) appears in the
/// same round under both representations.
enum class Reduction : unsigned char { exact = 0, minimal = 1 };

namespace detail {

/// Prefix trie over coordinates answering "is some stored vector <= v".
class DominanceTrie {
 public:
  explicit DominanceTrie(std::size_t n) : n_(n) { nodes_.emplace_back(); }

  void insert(PackedVector v) {
    std::uint32_t at = 0;
    nodes_[0].low = lane_min(nodes_[0].low, v);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto key = static_cast<std::uint8_t>(lane(v, i));
      auto& kids = nodes_[at].children;
      auto it = std::lower_bound(kids.begin(), kids.end(), key,
                                 [](const Child& c, std::uint8_t k) { return c.key < k; });
      if (it != kids.end() && it->key == key) {
        at = it->node;
        nodes_[at].low = lane_min(nodes_[at].low, v);
        continue;
      }
      const auto fresh = static_cast<std::uint32_t>(nodes_.size());
      kids.insert(it, Child{key, fresh});
      nodes_.emplace_back();
      nodes_.back().low = v;
      at = fresh;
    }
  }

  bool has_below(PackedVector v) const {
    PackedVector found = 0;
    return search(0, 0, v, 0, found);
  }

  /// Like has_below, reporting the stored vector found.
  bool find_below(PackedVector v, PackedVector& found) const { return search(0, 0, v, 0, found); }

  bool empty() const { return nodes_.front().children.empty(); }

 private:
  struct Child {
    std::uint8_t key;
    std::uint32_t node;
  };
  struct Node {
    std::vector<Child> children;
    PackedVector low = ~PackedVector{0};  // lanewise minimum of the subtree
  };

  static PackedVector lane_min(PackedVector a, PackedVector b) {
    PackedVector out = 0;
    for (std::size_t i = 0; i < kMaxDimension; ++i) out = with_lane(out, i, std::min(lane(a, i), lane(b, i)));
    return out;
  }

  bool below(PackedVector a, PackedVector v) const {
    for (std::size_t i = 0; i < n_; ++i) {
      if (lane(a, i) > lane(v, i)) return false;
    }
    return true;
  }

  bool search(std::uint32_t at, std::size_t depth, PackedVector v, PackedVector path,
              PackedVector& found) const {
    if (depth == n_) {
      found = path;
      return true;
    }
    const unsigned limit = lane(v, depth);
    for (const Child& c : nodes_[at].children) {
      if (c.key > limit) break;
      if (!below(nodes_[c.node].low, v)) continue;
      if (search(c.node, depth + 1, v, with_lane(path, depth, c.key), found)) return true;
    }
    return false;
  }

  std::size_t n_;
  std::vector<Node> nodes_;
};

}  // namespace detail

/// Reduces `vs` in place to its canonical form under `mode`: sorted by
/// packed value, deduplicated, and (for `minimal`) stripped of every vector
/// that dominates another member.
inline void canonicalize(std::vector<PackedVector>& vs, Reduction mode, const Bound& b) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  if (mode == Reduction::exact || vs.size() < 2) return;
  // Bucket by coordinate sum: a vector can only be dominated by one of
  // strictly smaller sum, so buckets are filtered in increasing order
  // against everything kept so far.
  unsigned top = 0;
  for (PackedVector v : vs) top = std::max(top, lane_sum(v));
  std::vector<std::vector<PackedVector>> buckets(top + 1);
  for (PackedVector v : vs) buckets[lane_sum(v)].push_back(v);
  detail::DominanceTrie trie(b.dimension());
  vs.clear();
  PackedVector last = 0;
  bool have_last = false;
  for (auto& bucket : buckets) {
    const std::size_t first = vs.size();
    for (PackedVector v : bucket) {
      if (have_last && b.leq(last, v)) continue;
      if (trie.find_below(v, last)) {
        have_last = true;
        continue;
      }
      vs.push_back(v);
    }
    for (std::size_t i = first; i < vs.size(); ++i) trie.insert(vs[i]);
  }
  std::sort(vs.begin(), vs.end());
}

/// Removes from `vs` (canonical) every vector already represented by the
/// canonical set `ref`: equal to a member (exact) or dominating one (minimal).
inline void remove_represented(std::vector<PackedVector>& vs, std::span<const PackedVector> ref,
                               Reduction mode, const Bound& b) {
  if (ref.empty() || vs.empty()) return;
  if (mode == Reduction::exact) {
    std::vector<PackedVector> out;
    out.reserve(vs.size());
    std::set_difference(vs.begin(), vs.end(), ref.begin(), ref.end(), std::back_inserter(out));
    vs.swap(out);
    return;
  }
  detail::DominanceTrie trie(b.dimension());
  for (PackedVector r : ref) trie.insert(r);
  std::erase_if(vs, [&](PackedVector v) { return trie.has_below(v); });
}

/// Canonical union of two canonical sets.
inline std::vector<PackedVector> merge_canonical(std::span<const PackedVector> a,
                                                 std::span<const PackedVector> bset,
                                                 Reduction mode, const Bound& b) {
  std::vector<PackedVector> out;
  out.reserve(a.size() + bset.size());
  std::set_union(a.begin(), a.end(), bset.begin(), bset.end(), std::back_inserter(out));
  if (mode == Reduction::minimal) canonicalize(out, mode, b);
  return out;
}

}  // namespace partition_bounds::hbar
