#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "partition_bounds/hbar/antichain.hpp"
#include "partition_bounds/hbar/packed_vector.hpp"

namespace partition_bounds::hbar {

/// Resource limits for a saturation run. A default-constructed budget is
/// unlimited and single-threaded.
struct Budget {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  /// Cap on the number of packed vectors held at once (8 bytes each).
  std::size_t max_vectors = std::size_t{1} << 31;
  unsigned workers = 1;
  /// Sum enumerations smaller than this (in candidate pairs) stay on one thread.
  std::size_t min_parallel_work = std::size_t{1} << 16;

  static Budget seconds(double s, unsigned workers = 1) {
    Budget b;
    b.deadline = std::chrono::steady_clock::now() +
                 std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                     std::chrono::duration<double>(s));
    b.workers = workers;
    return b;
  }

  bool expired() const { return deadline && std::chrono::steady_clock::now() >= *deadline; }
};

/// The family {h^[m](i)}_{i<n} at round m, in the chosen representation.
///
/// `sets[i]` is sorted by packed value. `fresh[i]` holds the members added
/// by the most recent round (a sorted subset of `sets[i]`); `dirty[i]` is
/// true iff `fresh[i]` is nonempty. Round 0 marks every seed as fresh.
struct GenerationState {
  Bound h;
  std::uint64_t round = 0;
  Reduction reduction = Reduction::minimal;
  std::vector<std::vector<PackedVector>> sets;
  std::vector<std::vector<PackedVector>> fresh;
  std::vector<bool> dirty;

  std::size_t dimension() const { return h.dimension(); }

  static GenerationState initial(const Bound& h, Reduction reduction) {
    GenerationState s;
    s.h = h;
    s.reduction = reduction;
    const std::size_t n = h.dimension();
    s.sets.resize(n);
    s.fresh.resize(n);
    s.dirty.assign(n, true);
    for (std::size_t i = 0; i < n; ++i) {
      s.sets[i] = {unit_vector(i)};
      s.fresh[i] = {unit_vector(i)};
    }
    return s;
  }

  std::size_t total_vectors() const {
    std::size_t t = 0;
    for (const auto& s : sets) t += s.size();
    return t;
  }

  bool contains_zero() const {
    return std::any_of(sets.begin(), sets.end(), [](const auto& s) {
      return !s.empty() && s.front() == kZeroVector;
    });
  }

  bool operator==(const GenerationState&) const = default;
};

enum class Outcome { generated_zero, fixed_point, budget_exhausted };

inline const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::generated_zero: return "generated-zero";
    case Outcome::fixed_point: return "fixed-point";
    case Outcome::budget_exhausted: return "budget-exhausted";
  }
  return "?";
}

struct SaturationResult {
  GenerationState state;
  Outcome outcome = Outcome::budget_exhausted;
  /// For generated-zero: the least index i whose set received the zero
  /// vector, and the round m at which it appeared.
  std::optional<std::size_t> zero_index;
  std::uint64_t zero_round = 0;
};

struct SaturateOptions {
  Budget budget;
  /// Called with the committed state after each completed round.
  std::function<void(const GenerationState&)> on_round;
  /// Stop after this many rounds of this call (budget-exhausted outcome).
  std::optional<std::uint64_t> max_rounds;
};

namespace detail {

struct BudgetExceeded {};

inline void check_budget(const Budget& budget, std::size_t held) {
  if (budget.expired() || held > budget.max_vectors) throw BudgetExceeded{};
}

/// Canonical set of all bounded sums l + r (l in left, r in right), minus
/// those represented by `ref`. Work is split over `left` across workers;
/// the merged result is canonical, hence independent of the split.
inline std::vector<PackedVector> bounded_sums(std::span<const PackedVector> left,
                                              std::span<const PackedVector> right,
                                              std::span<const PackedVector> ref, Reduction mode,
                                              const Bound& b, const Budget& budget) {
  if (left.empty() || right.empty()) return {};
  const std::size_t work = left.size() * right.size();
  unsigned workers = std::max(1u, budget.workers);
  if (work < budget.min_parallel_work) workers = 1;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, left.size()));

  auto run_chunk = [&](std::size_t lo, std::size_t hi, std::vector<PackedVector>& out,
                       std::atomic<bool>& abort) {
    const std::size_t flush = std::size_t{1} << 20;
    for (std::size_t i = lo; i < hi && !abort.load(std::memory_order_relaxed); ++i) {
      PackedVector x;
      for (PackedVector r : right) {
        if (b.add(left[i], r, x)) out.push_back(x);
      }
      if (out.size() > flush) {
        canonicalize(out, mode, b);
        if (budget.expired() || out.size() > budget.max_vectors) abort = true;
      }
    }
    canonicalize(out, mode, b);
    remove_represented(out, ref, mode, b);
  };

  std::atomic<bool> abort{false};
  std::vector<std::vector<PackedVector>> parts(workers);
  if (workers == 1) {
    run_chunk(0, left.size(), parts[0], abort);
  } else {
    std::vector<std::thread> pool;
    const std::size_t step = (left.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t lo = std::min(left.size(), w * step);
      const std::size_t hi = std::min(left.size(), lo + step);
      pool.emplace_back([&, lo, hi, w] { run_chunk(lo, hi, parts[w], abort); });
    }
    for (auto& t : pool) t.join();
  }
  if (abort) throw BudgetExceeded{};
  std::vector<PackedVector> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  canonicalize(out, mode, b);
  return out;
}

}  // namespace detail

/// Drives the recursion h^[m+1](i) = h^[m](i) ∪ {x − x(i)χ_i : x ∈ Σ_j h^[m](j), x ≤ h}.
///
/// Sums are built layer by layer (index 0, then 1, ...), discarding any
/// partial sum that leaves the box below h. Between rounds the engine keeps
/// the canonical prefix sums of the previous round, so a round only
/// enumerates sums that use at least one vector added by the round before
/// (semi-naive evaluation). A freshly constructed or resumed engine has no
/// prefix cache and recomputes the first round in full; the committed
/// states are identical either way.
class Saturator {
 public:
  explicit Saturator(GenerationState state) : state_(std::move(state)) {
    if (state_.dimension() == 0) throw std::invalid_argument("dimension must be at least 1");
    if (state_.sets.size() != state_.dimension() || state_.fresh.size() != state_.dimension() ||
        state_.dirty.size() != state_.dimension())
      throw std::invalid_argument("generation state is inconsistent with its dimension");
  }

  static Saturator start(const Bound& h, Reduction reduction = Reduction::minimal) {
    return Saturator(GenerationState::initial(h, reduction));
  }

  const GenerationState& state() const { return state_; }

  SaturationResult run(const SaturateOptions& opts = {}) {
    SaturationResult res;
    std::uint64_t done = 0;
    if (state_.contains_zero()) return finish_zero(res);
    while (true) {
      if (std::none_of(state_.dirty.begin(), state_.dirty.end(), [](bool d) { return d; })) {
        res.outcome = Outcome::fixed_point;
        res.state = state_;
        return res;
      }
      if (opts.max_rounds && done >= *opts.max_rounds) break;
      try {
        detail::check_budget(opts.budget, state_.total_vectors());
        step(opts.budget);
      } catch (const detail::BudgetExceeded&) {
        cache_.clear();
        break;
      }
      ++done;
      if (opts.on_round) opts.on_round(state_);
      if (state_.contains_zero()) return finish_zero(res);
    }
    res.outcome = Outcome::budget_exhausted;
    res.state = state_;
    return res;
  }

 private:
  SaturationResult& finish_zero(SaturationResult& res) {
    res.outcome = Outcome::generated_zero;
    res.state = state_;
    for (std::size_t i = 0; i < state_.sets.size(); ++i) {
      if (!state_.sets[i].empty() && state_.sets[i].front() == kZeroVector) {
        res.zero_index = i;
        break;
      }
    }
    res.zero_round = state_.round;
    return res;
  }

  /// One round; commits only on success so an aborted round leaves the
  /// state at the previous round boundary.
  void step(const Budget& budget) {
    const Bound& b = state_.h;
    const Reduction mode = state_.reduction;
    const std::size_t n = b.dimension();
    const bool cached = cache_.size() == n + 1;
    static const std::vector<PackedVector> kOrigin{kZeroVector};
    static const std::vector<PackedVector> kNone{};

    // prefix(k): canonical sums over layers 0..k-1 from the previous round.
    auto prefix = [&](std::size_t k) -> const std::vector<PackedVector>& {
      if (k == 0) return kOrigin;
      return cached ? cache_[k] : kNone;
    };

    std::vector<std::vector<PackedVector>> next_cache(n + 1);
    next_cache[0] = kOrigin;
    std::vector<PackedVector> mixed;  // sums over layers 0..k with >= 1 fresh addend
    for (std::size_t k = 0; k < n; ++k) {
      const auto& layer = state_.sets[k];
      const auto& delta = cached ? state_.fresh[k] : state_.sets[k];
      const auto& old_next = prefix(k + 1);
      auto a = detail::bounded_sums(mixed, layer, old_next, mode, b, budget);
      auto c = detail::bounded_sums(prefix(k), delta, old_next, mode, b, budget);
      mixed = merge_canonical(a, c, mode, b);
      next_cache[k + 1] = merge_canonical(old_next, mixed, mode, b);
      std::size_t held = state_.total_vectors() + mixed.size();
      for (const auto& v : next_cache) held += v.size();
      detail::check_budget(budget, held);
    }

    GenerationState next = state_;
    next.round += 1;
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<PackedVector> zeroed;
      zeroed.reserve(mixed.size());
      for (PackedVector x : mixed) zeroed.push_back(zero_lane(x, i));
      canonicalize(zeroed, mode, b);
      remove_represented(zeroed, state_.sets[i], mode, b);
      next.sets[i] = merge_canonical(state_.sets[i], zeroed, mode, b);
      std::vector<PackedVector> added;
      std::set_difference(next.sets[i].begin(), next.sets[i].end(), state_.sets[i].begin(),
                          state_.sets[i].end(), std::back_inserter(added));
      next.fresh[i] = std::move(added);
      next.dirty[i] = !next.fresh[i].empty();
    }
    state_ = std::move(next);
    cache_ = std::move(next_cache);
  }

  GenerationState state_;
  std::vector<std::vector<PackedVector>> cache_;
};

/// Runs the recursion for `h` from round 0.
inline SaturationResult saturate(const Bound& h, const SaturateOptions& opts = {},
                                 Reduction reduction = Reduction::minimal) {
  return Saturator::start(h, reduction).run(opts);
}

enum class Decision { yes, no, unknown };

inline Decision is_zero_generating(const Bound& h, const SaturateOptions& opts = {},
                                   Reduction reduction = Reduction::minimal) {
  switch (saturate(h, opts, reduction).outcome) {
    case Outcome::generated_zero: return Decision::yes;
    case Outcome::fixed_point: return Decision::no;
    case Outcome::budget_exhausted: return Decision::unknown;
  }
  return Decision::unknown;
}

}  // namespace partition_bounds::hbar
