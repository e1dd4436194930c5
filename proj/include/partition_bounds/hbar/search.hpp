#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "partition_bounds/bounds.hpp"
#include "partition_bounds/hbar/checkpoint.hpp"
#include "partition_bounds/hbar/generation.hpp"

namespace partition_bounds::hbar {

enum class HbarStatus { exact, lower_bound, upper_bound };

inline const char* to_string(HbarStatus s) {
  switch (s) {
    case HbarStatus::exact: return "exact";
    case HbarStatus::lower_bound: return "lower-bound";
    case HbarStatus::upper_bound: return "upper-bound";
  }
  return "?";
}

/// The constant bound c generated zero: it first appeared in sets[index]
/// at the given round.
struct ZeroWitness {
  unsigned c = 0;
  std::uint64_t index = 0;
  std::uint64_t round = 0;
};

/// The constant bound c reached a fixed point without the zero vector.
struct FixedPointAttestation {
  unsigned c = 0;
  std::uint64_t rounds = 0;
  std::uint64_t vectors = 0;
};

struct Probe {
  unsigned c = 0;
  Outcome outcome = Outcome::budget_exhausted;
  std::uint64_t rounds = 0;
  double seconds = 0;
};

/// Result of an hbar search. `value` is hbar(n) when exact, the least c
/// shown to generate zero for an upper bound, and the least c not excluded
/// for a lower bound.
struct HbarResult {
  int n = 0;
  unsigned value = 0;
  HbarStatus status = HbarStatus::lower_bound;
  std::optional<ZeroWitness> upper;
  std::optional<FixedPointAttestation> lower;
  /// Interval (phi(n), phi(n+1)] guaranteed to contain hbar(n).
  unsigned interval_low = 0;
  unsigned interval_high = 0;
  std::vector<Probe> probes;
};

enum class SearchOrder {
  /// Bisection of the guaranteed interval.
  bisect,
  /// Increasing c from phi(n) + 1; probes only non-generating values below
  /// the answer, which are the cheap ones when the interval is wide.
  ascending,
};

struct HbarOptions {
  Budget budget;
  Reduction reduction = Reduction::minimal;
  SearchOrder order = SearchOrder::bisect;
  /// Written at every round boundary.
  std::optional<std::filesystem::path> checkpoint;
  /// Continue from this checkpoint instead of starting fresh.
  std::optional<Checkpoint> resume;
  std::function<void(const std::string&)> log;
};

namespace detail {

inline unsigned to_unsigned(const BigNat& v) {
  if (!v.fits_uint_p()) throw std::out_of_range("hbar: search interval exceeds machine range");
  return static_cast<unsigned>(v.get_ui());
}

inline std::optional<unsigned> constant_value(const Bound& b) {
  const unsigned c = lane(b.value(), 0);
  for (std::size_t i = 1; i < b.dimension(); ++i) {
    if (lane(b.value(), i) != c) return std::nullopt;
  }
  return c;
}

}  // namespace detail

/// Computes hbar(n), the least c for which the constant bound c is
/// 0-generating, searching the interval (phi(n), phi(n+1)].
inline HbarResult hbar(int n, const HbarOptions& opts = {}) {
  if (n < 2) throw std::invalid_argument("hbar: n must be >= 2");
  if (static_cast<std::size_t>(n) > kMaxDimension) throw std::invalid_argument("hbar: n exceeds 8");
  HbarResult res;
  res.n = n;
  res.interval_low = detail::to_unsigned(bounds::phi_discrete(n));
  res.interval_high = detail::to_unsigned(bounds::phi_discrete(n + 1));

  SearchContext ctx;
  std::optional<GenerationState> pending;
  if (opts.resume) {
    if (opts.resume->state.dimension() != static_cast<std::size_t>(n))
      throw CheckpointError(CheckpointError::Kind::dimension_mismatch,
                            "checkpoint: state has n=" + std::to_string(opts.resume->state.dimension()) +
                                ", run has n=" + std::to_string(n));
    if (!detail::constant_value(opts.resume->state.h))
      throw CheckpointError(CheckpointError::Kind::malformed, "checkpoint: bound is not constant");
    ctx = opts.resume->search;
    pending = opts.resume->state;
  }

  auto note = [&](const std::string& msg) {
    if (opts.log) opts.log(msg);
  };
  bool exhausted = false;

  // Decides constant c (from `start` when resuming) and records the outcome.
  auto decide = [&](unsigned c, std::optional<GenerationState> start) {
    const auto t0 = std::chrono::steady_clock::now();
    Saturator sat = start ? Saturator(std::move(*start))
                          : Saturator::start(Bound::constant(n, c), opts.reduction);
    SaturateOptions so;
    so.budget = opts.budget;
    if (opts.checkpoint) {
      so.on_round = [&](const GenerationState& s) { checkpoint_save(Checkpoint{s, ctx}, *opts.checkpoint); };
    }
    const SaturationResult r = sat.run(so);
    Probe p{c, r.outcome, r.state.round,
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()};
    res.probes.push_back(p);
    note("c=" + std::to_string(c) + " " + to_string(r.outcome) + " after " + std::to_string(r.state.round) +
         " rounds");
    switch (r.outcome) {
      case Outcome::generated_zero:
        if (ctx.known_upper == 0 || c < ctx.known_upper) {
          ctx.known_upper = c;
          ctx.upper_index = *r.zero_index;
          ctx.upper_round = r.zero_round;
        }
        break;
      case Outcome::fixed_point:
        if (c > ctx.known_lower) {
          ctx.known_lower = c;
          ctx.lower_rounds = r.state.round;
          ctx.lower_vectors = r.state.total_vectors();
        }
        break;
      case Outcome::budget_exhausted:
        exhausted = true;
        if (opts.checkpoint) checkpoint_save(Checkpoint{r.state, ctx}, *opts.checkpoint);
        break;
    }
  };

  if (pending) decide(*detail::constant_value(pending->h), std::move(pending));

  // lo is known (or guaranteed) not to generate; hi is known (or
  // guaranteed) to generate.
  auto lo = [&] { return std::max(res.interval_low, ctx.known_lower); };
  auto hi = [&] { return ctx.known_upper ? ctx.known_upper : res.interval_high; };
  // Probes stay within the packed lane range; above it only the guaranteed
  // upper end of the interval is available.
  auto probe_hi = [&] { return std::min(hi(), kMaxConstant + 1); };
  while (!exhausted && probe_hi() - lo() > 1) {
    const unsigned c = opts.order == SearchOrder::bisect ? lo() + (probe_hi() - lo()) / 2 : lo() + 1;
    decide(c, std::nullopt);
  }
  if (!exhausted && ctx.known_upper == 0 && hi() <= kMaxConstant) decide(hi(), std::nullopt);
  if (!exhausted && ctx.known_upper != 0 && ctx.known_lower + 1 != ctx.known_upper && ctx.known_upper > 1)
    decide(ctx.known_upper - 1, std::nullopt);

  if (ctx.known_upper != 0) res.upper = ZeroWitness{ctx.known_upper, ctx.upper_index, ctx.upper_round};
  if (ctx.known_lower != 0) res.lower = FixedPointAttestation{ctx.known_lower, ctx.lower_rounds, ctx.lower_vectors};
  if (res.upper && res.lower && res.lower->c + 1 == res.upper->c) {
    res.status = HbarStatus::exact;
    res.value = res.upper->c;
  } else if (res.upper) {
    res.status = HbarStatus::upper_bound;
    res.value = res.upper->c;
  } else {
    res.status = HbarStatus::lower_bound;
    res.value = lo() + 1;
  }
  return res;
}

/// Decides a single constant bound, e.g. to confirm an upper bound.
inline SaturationResult check_constant(int n, unsigned c, const HbarOptions& opts = {}) {
  if (n < 1 || static_cast<std::size_t>(n) > kMaxDimension) throw std::invalid_argument("n must be in 1..8");
  SaturateOptions so;
  so.budget = opts.budget;
  if (opts.checkpoint) so.on_round = [&](const GenerationState& s) { checkpoint_save(s, *opts.checkpoint); };
  Saturator sat = opts.resume ? Saturator(opts.resume->state) : Saturator::start(Bound::constant(n, c), opts.reduction);
  auto r = sat.run(so);
  if (opts.checkpoint && r.outcome == Outcome::budget_exhausted) checkpoint_save(r.state, *opts.checkpoint);
  return r;
}

}  // namespace partition_bounds::hbar
