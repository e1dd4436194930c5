#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "partition_bounds/numeric.hpp"

namespace partition_bounds::densities {

template <class T>
using Matrix = std::vector<std::vector<T>>;

namespace detail {

inline bool positive(const Rational& v) { return sgn(v) > 0; }
inline bool positive(double v) { return v > 1e-12; }

}  // namespace detail

enum class LpStatus { optimal, unbounded };

template <class T>
struct LpResult {
  LpStatus status = LpStatus::optimal;
  T value{};
  /// Primal optimum.
  std::vector<T> x;
  /// Optimal multipliers of the constraints.
  std::vector<T> dual;
  std::size_t pivots = 0;
};

/// Maximizes c.x subject to A x <= b, x >= 0, for b >= 0, by the primal
/// simplex method on a dense tableau. Bland's rule (least entering index,
/// least leaving basis index on ratio ties) rules out cycling.
template <class T>
LpResult<T> maximize(const Matrix<T>& a, const std::vector<T>& b, const std::vector<T>& c) {
  const std::size_t m = a.size(), n = c.size();
  if (b.size() != m) throw std::invalid_argument("maximize: row count mismatch");
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("maximize: column count mismatch");
  for (const auto& v : b)
    if (v < 0) throw std::invalid_argument("maximize: right-hand side must be non-negative");

  const std::size_t width = n + m;
  // Row i: structural columns, slack columns, then the right-hand side.
  Matrix<T> t(m, std::vector<T>(width + 1, T(0)));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
    t[i][n + i] = T(1);
    t[i][width] = b[i];
  }
  // Reduced costs; the last entry holds minus the objective value.
  std::vector<T> r(width + 1, T(0));
  for (std::size_t j = 0; j < n; ++j) r[j] = c[j];
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  LpResult<T> res;
  while (true) {
    std::size_t enter = width;
    for (std::size_t j = 0; j < width; ++j)
      if (detail::positive(r[j])) {
        enter = j;
        break;
      }
    if (enter == width) break;
    std::size_t leave = m;
    T best{};
    for (std::size_t i = 0; i < m; ++i) {
      if (!detail::positive(t[i][enter])) continue;
      T ratio = t[i][width] / t[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) {
      res.status = LpStatus::unbounded;
      return res;
    }
    ++res.pivots;
    auto& prow = t[leave];
    const T p = prow[enter];
    for (auto& v : prow) v /= p;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const T f = t[i][enter];
      for (std::size_t j = 0; j <= width; ++j) t[i][j] -= f * prow[j];
    }
    if (r[enter] != 0) {
      const T f = r[enter];
      for (std::size_t j = 0; j <= width; ++j) r[j] -= f * prow[j];
    }
    basis[leave] = enter;
  }
  res.x.assign(n, T(0));
  for (std::size_t i = 0; i < m; ++i)
    if (basis[i] < n) res.x[basis[i]] = t[i][width];
  res.dual.resize(m);
  for (std::size_t i = 0; i < m; ++i) res.dual[i] = -r[n + i];
  res.value = -r[width];
  return res;
}

template <class T>
struct GameSolution {
  /// max over row mixtures of min over column mixtures of row' M col.
  T value{};
  std::vector<T> row;
  std::vector<T> col;
};

/// Solves the zero-sum matrix game where the row player maximizes. The
/// payoffs are shifted to be at least 1, making the value positive; then
/// max 1.w s.t. M' w <= 1, w >= 0 has optimum 1/value, its solution scales
/// to the column strategy and its duals to the row strategy.
template <class T>
GameSolution<T> solve_game(const Matrix<T>& payoff) {
  if (payoff.empty() || payoff.front().empty()) throw std::invalid_argument("solve_game: empty payoff matrix");
  const std::size_t rows = payoff.size(), cols = payoff.front().size();
  T low = payoff[0][0];
  for (const auto& r : payoff) {
    if (r.size() != cols) throw std::invalid_argument("solve_game: ragged payoff matrix");
    for (const auto& v : r) low = std::min(low, v);
  }
  const T shift = T(1) - low;
  Matrix<T> a(rows, std::vector<T>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = payoff[i][j] + shift;
  const auto lp = maximize(a, std::vector<T>(rows, T(1)), std::vector<T>(cols, T(1)));
  GameSolution<T> g;
  const T scaled = T(1) / lp.value;
  g.value = scaled - shift;
  g.col.resize(cols);
  g.row.resize(rows);
  for (std::size_t j = 0; j < cols; ++j) g.col[j] = lp.x[j] * scaled;
  for (std::size_t i = 0; i < rows; ++i) g.row[i] = lp.dual[i] * scaled;
  return g;
}

}  // namespace partition_bounds::densities
