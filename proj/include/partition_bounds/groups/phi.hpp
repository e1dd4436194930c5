#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "partition_bounds/groups/cover.hpp"
#include "partition_bounds/groups/subset.hpp"

namespace partition_bounds::groups {

enum class PhiMode { exhaustive, random };

inline constexpr std::size_t kPhiExhaustiveCap = 10;

struct PhiOptions {
  PhiMode mode = PhiMode::exhaustive;
  std::size_t exhaustive_cap = kPhiExhaustiveCap;
  std::uint64_t seed = 0;
  std::uint64_t samples = 20000;
  std::optional<double> seconds;
};

struct PhiResult {
  std::size_t value = 0;
  /// Cell index of every element (a restricted growth string).
  std::vector<std::size_t> witness;
  /// True when every partition was examined; random mode gives a lower bound.
  bool exact = true;
  std::uint64_t partitions = 0;
};

namespace detail {

/// Memoized cov(AA^-1) keyed by membership bits.
class DifferenceCov {
 public:
  explicit DifferenceCov(const FiniteGroup& g) : g_(g) {}

  std::size_t operator()(const GroupSubset::Bits& bits) {
    auto it = memo_.find(bits);
    if (it != memo_.end()) return it->second;
    const GroupSubset a(g_, bits);
    const std::size_t c = covering_number(product_set(a, inverse_set(a))).value;
    memo_.emplace(bits, c);
    return c;
  }

 private:
  const FiniteGroup& g_;
  std::map<GroupSubset::Bits, std::size_t> memo_;
};

inline std::size_t partition_value(const std::vector<std::size_t>& rgs, std::size_t blocks, const FiniteGroup& g,
                                   DifferenceCov& cov) {
  std::vector<GroupSubset::Bits> cells(blocks, GroupSubset::Bits(g.order()));
  for (std::size_t x = 0; x < rgs.size(); ++x) cells[rgs[x]].set(x);
  std::size_t best = SIZE_MAX;
  for (const auto& c : cells) best = std::min(best, cov(c));
  return best;
}

}  // namespace detail

/// Phi_G(n): the maximum over partitions of G into at most n cells of the
/// least cov(AA^-1) over the cells. Covers need not be considered: refining
/// a cover to a partition only shrinks cells, which can only raise
/// cov(AA^-1).
///
/// Exhaustive mode walks restricted growth strings in lexicographic order
/// and reports the first partition attaining the maximum.
inline PhiResult phi_g(const FiniteGroup& g, std::size_t n, const PhiOptions& opts = {}) {
  if (n == 0) throw std::invalid_argument("phi_g: n must be at least 1");
  const std::size_t order = g.order();
  detail::DifferenceCov cov(g);
  PhiResult res;
  std::vector<std::size_t> rgs(order, 0);
  auto consider = [&](std::size_t blocks) {
    ++res.partitions;
    const std::size_t v = detail::partition_value(rgs, blocks, g, cov);
    if (res.witness.empty() || v > res.value) {
      res.value = v;
      res.witness = rgs;
    }
  };

  if (opts.mode == PhiMode::exhaustive) {
    if (order > opts.exhaustive_cap)
      throw std::invalid_argument("phi_g: order " + std::to_string(order) + " exceeds the exhaustive cap " +
                                  std::to_string(opts.exhaustive_cap));
    // prefix_max[i] = max(rgs[0..i]).
    std::vector<std::size_t> prefix_max(order, 0);
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == order) {
        consider(prefix_max[order - 1] + 1);
        return;
      }
      const std::size_t top = prefix_max[i - 1] + 1;
      for (std::size_t b = 0; b <= top && b < n; ++b) {
        rgs[i] = b;
        prefix_max[i] = std::max(prefix_max[i - 1], b);
        self(self, i + 1);
      }
    };
    rgs[0] = 0;
    if (order == 1) consider(1);
    else rec(rec, 1);
    return res;
  }

  res.exact = false;
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<std::size_t> cell(0, n - 1);
  const auto t0 = std::chrono::steady_clock::now();
  for (std::uint64_t t = 0; t < opts.samples; ++t) {
    if (opts.seconds && std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() > *opts.seconds)
      break;
    // Random labels, relabelled in order of first appearance.
    std::vector<std::size_t> label(n, SIZE_MAX);
    std::size_t blocks = 0;
    for (std::size_t x = 0; x < order; ++x) {
      std::size_t c = cell(rng);
      if (label[c] == SIZE_MAX) label[c] = blocks++;
      rgs[x] = label[c];
    }
    const std::size_t v = detail::partition_value(rgs, blocks, g, cov);
    ++res.partitions;
    if (res.witness.empty() || v > res.value || (v == res.value && rgs < res.witness)) {
      res.value = v;
      res.witness = rgs;
    }
  }
  return res;
}

/// The cells of a restricted growth string as subsets.
inline std::vector<GroupSubset> partition_cells(const FiniteGroup& g, const std::vector<std::size_t>& rgs) {
  std::size_t blocks = 0;
  for (std::size_t b : rgs) blocks = std::max(blocks, b + 1);
  std::vector<GroupSubset> cells(blocks, GroupSubset(g));
  for (std::size_t x = 0; x < rgs.size(); ++x) cells[rgs[x]].insert(static_cast<Element>(x));
  return cells;
}

struct ScanEntry {
  std::string group;
  std::size_t order = 0;
  std::size_t n = 0;
  PhiResult phi;
  bool within_bound = false;
};

/// Phi_G(n) for every group and every n in [n_min, n_max] (clamped to
/// |G|, beyond which Phi_G is constant). Groups above the exhaustive cap
/// are sampled.
inline std::vector<ScanEntry> conjecture_scan(const std::vector<FiniteGroup>& family, std::size_t n_min,
                                              std::size_t n_max, const PhiOptions& opts = {}) {
  if (n_min == 0 || n_min > n_max) throw std::invalid_argument("conjecture_scan: need 1 <= n_min <= n_max");
  std::vector<ScanEntry> out;
  for (const auto& g : family) {
    PhiOptions o = opts;
    if (g.order() > o.exhaustive_cap) o.mode = PhiMode::random;
    for (std::size_t n = n_min; n <= std::min(n_max, g.order()); ++n) {
      ScanEntry e{g.name(), g.order(), n, phi_g(g, n, o), false};
      e.within_bound = e.phi.value <= n;
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace partition_bounds::groups
