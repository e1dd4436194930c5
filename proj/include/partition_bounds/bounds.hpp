#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "partition_bounds/numeric.hpp"

namespace partition_bounds::bounds {

/// u(1) = 1, u(n+1) = u(n)(u(n)+1).
inline BigNat u_seq(int n) {
  if (n < 1) throw std::invalid_argument("u_seq: n must be >= 1");
  BigNat u = 1;
  for (int i = 1; i < n; ++i) u = u * (u + 1);
  return u;
}

inline BigNat factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: n must be >= 0");
  BigNat f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

/// 2^(2^(n-1) - 1).
inline BigNat double_exp(int n) {
  if (n < 1) throw std::invalid_argument("double_exp: n must be >= 1");
  if (n > 40) throw std::invalid_argument("double_exp: n too large to materialize");
  BigNat r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, (1UL << (n - 1)) - 1);
  return r;
}

/// The geometric sum sum_{i=0}^{terms-1} k^i, term by term.
inline BigNat geometric_sum(long k, long terms) {
  BigNat sum = 0, power = 1;
  for (long i = 0; i < terms; ++i) {
    sum += power;
    power *= k;
  }
  return sum;
}

/// max over 0 < k < n of sum_{i=0}^{n-k-1} k^i.
inline BigNat phi_discrete(int n) {
  if (n < 2) throw std::invalid_argument("phi_discrete: n must be >= 2");
  BigNat best = 0;
  for (long k = 1; k < n; ++k) {
    BigNat s = geometric_sum(k, n - k);
    if (s > best) best = s;
  }
  return best;
}

namespace detail {

/// ln((x^(n-x) - 1)/(x - 1)) for 1 < x < n.
inline double log_gap_ratio(double n, double x) {
  const double a = (n - x) * std::log(x);
  const double log_num = a > 30.0 ? a + std::log1p(-std::exp(-a)) : std::log(std::expm1(a));
  return log_num - std::log(x - 1.0);
}

}  // namespace detail

/// ln of sup_{1<x<n} (x^(n-x) - 1)/(x - 1).
///
/// Dense sampling of (1, n) followed by golden-section refinement around the
/// best sample. The supremum also takes the endpoint limit n - 1 (as x -> 1+)
/// and the integer points 2..n-1, so it never falls below phi_discrete.
inline double ln_phi_continuous(int n) {
  if (n < 2) throw std::invalid_argument("phi_continuous: n must be >= 2");
  const double nn = n;
  constexpr int kSamples = 1024;
  double best = std::log(nn - 1.0);  // limit at x -> 1+ (0 for n = 2)
  for (int k = 2; k < n; ++k) best = std::max(best, detail::log_gap_ratio(nn, k));

  const double width = (nn - 1.0) / kSamples;
  int arg = -1;
  double sampled = -std::numeric_limits<double>::infinity();
  for (int j = 0; j < kSamples; ++j) {
    const double x = 1.0 + (j + 0.5) * width;
    const double v = detail::log_gap_ratio(nn, x);
    if (v > sampled) {
      sampled = v;
      arg = j;
    }
  }
  double lo = std::max(1.0 + 1e-12, 1.0 + (arg - 0.5) * width);
  double hi = std::min(nn - 1e-12, 1.0 + (arg + 1.5) * width);
  constexpr double kInvPhi = 0.6180339887498949;
  double c = hi - kInvPhi * (hi - lo), d = lo + kInvPhi * (hi - lo);
  double fc = detail::log_gap_ratio(nn, c), fd = detail::log_gap_ratio(nn, d);
  for (int it = 0; it < 200 && hi - lo > 1e-13 * nn; ++it) {
    if (fc > fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - kInvPhi * (hi - lo);
      fc = detail::log_gap_ratio(nn, c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + kInvPhi * (hi - lo);
      fd = detail::log_gap_ratio(nn, d);
    }
  }
  best = std::max({best, sampled, fc, fd});
  return best;
}

inline double phi_continuous(int n) { return std::exp(ln_phi_continuous(n)); }

/// The five-term asymptotic expansion of W at infinity, with L = ln x and
/// l = ln ln x.
inline double lambert_w_series(double x) {
  if (!(x > std::numbers::e)) throw std::domain_error("lambert_w_series: requires x > e");
  const double L = std::log(x);
  const double l = std::log(L);
  const double L2 = L * L, L3 = L2 * L, L4 = L3 * L;
  return L - l + l / L + l * (-2.0 + l) / (2.0 * L2) +
         l * (6.0 - 9.0 * l + 2.0 * l * l) / (6.0 * L3) +
         l * (-12.0 + 36.0 * l - 22.0 * l * l + 3.0 * l * l * l) / (12.0 * L4);
}

/// Principal branch of the Lambert W function (inverse of w e^w) by Halley
/// iteration.
inline double lambert_w(double x) {
  constexpr double kBranch = -1.0 / std::numbers::e;
  if (std::isnan(x) || x < kBranch) throw std::domain_error("lambert_w: requires x >= -1/e");
  if (x == 0.0) return 0.0;
  if (x == kBranch) return -1.0;
  if (std::isinf(x)) return x;
  double w;
  if (x > std::numbers::e * std::numbers::e) {
    w = lambert_w_series(x);
  } else if (x < -0.25) {
    const double p = std::sqrt(2.0 * (std::numbers::e * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 / 72.0 * p * p * p;
  } else {
    w = std::log1p(x);
  }
  for (int it = 0; it < 64; ++it) {
    // f(w) = w - x e^{-w}, scaled to avoid overflow for large x.
    const double ew = std::exp(-w);
    const double f = w - x * ew;
    const double fp = 1.0 + x * ew;
    const double fpp = -x * ew;
    const double step = 2.0 * f * fp / (2.0 * fp * fp - f * fpp);
    w -= step;
    if (std::abs(step) <= 4 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(w))) break;
  }
  return w;
}

struct LnPhiBounds {
  double lo;
  double hi;
};

/// Lower and upper bracket for ln phi_continuous(n+1), valid for n > 50.
inline LnPhiBounds ln_phi_bounds(int n) {
  if (n <= 50) throw std::invalid_argument("ln_phi_bounds: requires n > 50");
  const double nn = n;
  const double w = lambert_w(nn * std::numbers::e);
  const double lo = nn * w - 2.0 * nn + nn / w + w / nn;
  const double hi = lo + std::log(std::log(nn * std::numbers::e)) / nn;
  return {lo, hi};
}

/// An entry of the hbar column: the value and whether it is exact (as
/// opposed to an upper bound).
struct HbarCell {
  BigNat value;
  bool exact = false;
};

struct BoundTableRow {
  int n = 0;
  BigNat phi_n;
  BigNat one_plus_floor_cont_phi;
  std::optional<HbarCell> hbar_n;
  BigNat phi_n_plus_1;
  BigNat factorial;
  std::optional<BigNat> u_n;
  BigNat double_exp;
};

/// Widely reproduced tables print 4320 and 30240 for 7! and 8!; these are
/// misprints of 5040 and 40320. Returns the misprinted value for n, if any.
inline std::optional<long> misprinted_factorial(int n) {
  if (n == 7) return 4320;
  if (n == 8) return 30240;
  return std::nullopt;
}

/// Largest n for which u(n) is shown; beyond it the entry is left absent.
inline constexpr int kUSeqTableLimit = 7;

using HbarProvider = std::function<std::optional<HbarCell>(int)>;

inline BigNat floor_plus_one(double v) {
  BigNat r;
  mpz_set_d(r.get_mpz_t(), std::floor(v));
  return r + 1;
}

inline std::vector<BoundTableRow> bounds_table(int n_max, const HbarProvider& hbar = {}) {
  if (n_max < 2) throw std::invalid_argument("bounds_table: n_max must be >= 2");
  std::vector<BoundTableRow> rows;
  for (int n = 2; n <= n_max; ++n) {
    BoundTableRow r;
    r.n = n;
    r.phi_n = phi_discrete(n);
    r.one_plus_floor_cont_phi = floor_plus_one(phi_continuous(n));
    if (hbar) r.hbar_n = hbar(n);
    r.phi_n_plus_1 = phi_discrete(n + 1);
    r.factorial = factorial(n);
    if (n <= kUSeqTableLimit) r.u_n = u_seq(n);
    r.double_exp = double_exp(n);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace partition_bounds::bounds
