#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "partition_bounds/densities/exact.hpp"
#include "partition_bounds/densities/measure.hpp"
#include "partition_bounds/densities/simplex.hpp"

namespace partition_bounds::densities {

struct Effort {
  std::size_t iterations = 500;
  std::size_t restarts = 16;
  double learning_rate = 0.1;
  std::uint64_t seed = 0;
  /// Start the first restart from the uniform measure.
  bool uniform_first = true;
};

struct HeuristicResult {
  /// Best certified value as a double.
  double estimate = 0;
  /// Exact inner value of the best outer measure(s) found.
  Rational lower;
  /// iss213(A).
  Rational upper;
  /// Outer measures achieving `lower` (one for sis123, mu1 then mu2 for ssi231).
  std::vector<Measure> witness;
  std::size_t best_restart = 0;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::vector<double> random_simplex_point(std::size_t n, std::mt19937_64& rng) {
  std::exponential_distribution<double> e(1.0);
  std::vector<double> p(n);
  double total = 0;
  for (auto& v : p) total += v = e(rng);
  for (auto& v : p) v /= total;
  return p;
}

/// Restart r starts from the uniform measure when r = 0 and uniform_first
/// is set, and from a seeded random point otherwise.
inline std::vector<double> restart_point(std::size_t n, std::uint64_t seed, std::size_t r, bool uniform_first = true) {
  if (r == 0 && uniform_first) return std::vector<double>(n, 1.0 / static_cast<double>(n));
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(r)};
  std::mt19937_64 rng(seq);
  return random_simplex_point(n, rng);
}

/// Payoff of the sis123 inner game for fixed mu: rows y (maximizing),
/// columns b (minimizing nu), entry mu(A y b^-1).
template <class T, class Weights>
Matrix<T> sis_inner_payoff(const GroupSubset& a, const Weights& mu) {
  const FiniteGroup& g = a.group();
  const std::size_t n = g.order();
  Matrix<T> m(n, std::vector<T>(n, T(0)));
  const auto elems = a.elements();
  for (Element y = 0; y < n; ++y)
    for (Element b = 0; b < n; ++b) {
      const Element s = g.mul(y, g.inv(b));
      for (Element x : elems) m[y][b] += mu[g.mul(x, s)];
    }
  return m;
}

/// Exact inner value of ssi231 for fixed (mu1, mu2): min over z of
/// sum over a, c of mu2(a) mu1(c) [a z c in A].
inline Rational ssi_inner_exact(const GroupSubset& a, const Measure& mu1, const Measure& mu2) {
  const FiniteGroup& g = a.group();
  std::optional<Rational> best;
  for (Element z = 0; z < g.order(); ++z) {
    Rational v = 0;
    for (Element p = 0; p < g.order(); ++p) {
      if (mu2[p] == 0) continue;
      const Element pz = g.mul(p, z);
      for (Element c = 0; c < g.order(); ++c)
        if (mu1[c] != 0 && a.contains(g.mul(pz, c))) v += mu2[p] * mu1[c];
    }
    if (!best || v < *best) best = v;
  }
  return *best;
}

}  // namespace detail

/// sis123(A) = sup over mu of inf over nu of max over y of (mu * nu)(Ay).
///
/// For fixed mu the inner problem is a matrix game. The outer measure is
/// improved by multiplicative weights along the envelope gradient
/// d/dmu_x = E_{nu*, w*}[x in A y b^-1], and the best mu found is certified
/// by an exact solve of its inner game.
inline HeuristicResult sis123(const GroupSubset& a, const Effort& effort = {}) {
  const FiniteGroup& g = a.group();
  const std::size_t n = g.order();
  HeuristicResult res;
  res.seed = effort.seed;
  res.upper = iss213(a).value;
  if (a.empty()) {
    res.witness.push_back(Measure::haar(g));
    return res;
  }
  const auto elems = a.elements();
  std::optional<double> best_value;
  std::vector<double> best_mu;
  for (std::size_t r = 0; r < std::max<std::size_t>(effort.restarts, 1); ++r) {
    std::vector<double> mu = detail::restart_point(n, effort.seed, r, effort.uniform_first);
    for (std::size_t it = 0; it <= effort.iterations; ++it) {
      const auto game = solve_game(detail::sis_inner_payoff<double>(a, mu));
      if (!best_value || game.value > *best_value + 1e-15) {
        best_value = game.value;
        best_mu = mu;
        res.best_restart = r;
      }
      if (it == effort.iterations) break;
      // game.row weights y, game.col weights b.
      std::vector<double> grad(n, 0.0);
      for (Element y = 0; y < n; ++y) {
        if (game.row[y] <= 0) continue;
        for (Element b = 0; b < n; ++b) {
          if (game.col[b] <= 0) continue;
          const double w = game.row[y] * game.col[b];
          const Element s = g.mul(y, g.inv(b));
          for (Element x : elems) grad[g.mul(x, s)] += w;
        }
      }
      double total = 0;
      for (std::size_t x = 0; x < n; ++x) total += mu[x] *= std::exp(effort.learning_rate * grad[x]);
      for (auto& v : mu) v /= total;
    }
  }
  const Measure mu = Measure::from_doubles(g, best_mu);
  res.lower = solve_game(detail::sis_inner_payoff<Rational>(a, mu.weights())).value;
  res.estimate = res.lower.get_d();
  res.witness.push_back(mu);
  return res;
}

/// Ssi231(A) = sup over mu1, mu2 of min over z of (mu2 * delta_z * mu1)(A).
///
/// The objective is linear in each measure separately, so the ascent
/// alternates two game solves: best mu2 against mu1,
/// then best mu1 against mu2, until neither improves.
inline HeuristicResult ssi231(const GroupSubset& a, const Effort& effort = {}) {
  const FiniteGroup& g = a.group();
  const std::size_t n = g.order();
  HeuristicResult res;
  res.seed = effort.seed;
  res.upper = iss213(a).value;
  if (a.empty()) {
    res.witness = {Measure::haar(g), Measure::haar(g)};
    return res;
  }
  auto best_mu2 = [&](const std::vector<double>& mu1) {
    Matrix<double> m(n, std::vector<double>(n, 0.0));  // rows p, columns z
    for (Element p = 0; p < n; ++p)
      for (Element z = 0; z < n; ++z) {
        const Element pz = g.mul(p, z);
        for (Element c = 0; c < n; ++c)
          if (a.contains(g.mul(pz, c))) m[p][z] += mu1[c];
      }
    return solve_game(m);
  };
  auto best_mu1 = [&](const std::vector<double>& mu2) {
    Matrix<double> m(n, std::vector<double>(n, 0.0));  // rows c, columns z
    for (Element c = 0; c < n; ++c)
      for (Element z = 0; z < n; ++z)
        for (Element p = 0; p < n; ++p)
          if (a.contains(g.mul(g.mul(p, z), c))) m[c][z] += mu2[p];
    return solve_game(m);
  };

  std::optional<double> best_value;
  std::vector<double> keep1, keep2;
  const std::size_t sweeps = std::max<std::size_t>(1, effort.iterations / 2);
  for (std::size_t r = 0; r < std::max<std::size_t>(effort.restarts, 1); ++r) {
    std::vector<double> mu1 = detail::restart_point(n, effort.seed, r, effort.uniform_first);
    std::vector<double> mu2;
    double value = -1;
    for (std::size_t it = 0; it < sweeps; ++it) {
      auto s2 = best_mu2(mu1);
      mu2 = s2.row;
      auto s1 = best_mu1(mu2);
      const bool improved = s1.value > value + 1e-13;
      mu1 = s1.row;
      value = s1.value;
      if (!improved) break;
    }
    if (!best_value || value > *best_value + 1e-15) {
      best_value = value;
      keep1 = mu1;
      keep2 = mu2;
      res.best_restart = r;
    }
  }
  const Measure m1 = Measure::from_doubles(g, keep1), m2 = Measure::from_doubles(g, keep2);
  res.lower = detail::ssi_inner_exact(a, m1, m2);
  res.estimate = res.lower.get_d();
  res.witness = {m1, m2};
  return res;
}

}  // namespace partition_bounds::densities
