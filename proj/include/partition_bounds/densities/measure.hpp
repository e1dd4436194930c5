#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "partition_bounds/groups/subset.hpp"
#include "partition_bounds/numeric.hpp"

namespace partition_bounds::densities {

using groups::Element;
using groups::FiniteGroup;
using groups::GroupSubset;

/// A probability measure on a finite group with exact rational weights.
class Measure {
 public:
  Measure(const FiniteGroup& g, std::vector<Rational> weights) : group_(&g), w_(std::move(weights)) {
    if (w_.size() != g.order()) throw std::invalid_argument("measure: weight count must equal group order");
    Rational total = 0;
    bool support = false;
    for (const auto& v : w_) {
      if (v < 0) throw std::invalid_argument("measure: weights must be non-negative");
      total += v;
      support |= v > 0;
    }
    if (total != 1 || !support) throw std::invalid_argument("measure: weights must sum to 1");
  }

  static Measure dirac(const FiniteGroup& g, Element x) {
    std::vector<Rational> w(g.order(), Rational(0));
    w.at(x) = 1;
    return Measure(g, std::move(w));
  }

  static Measure haar(const FiniteGroup& g) {
    return Measure(g, std::vector<Rational>(g.order(), make_rational(1, static_cast<long>(g.order()))));
  }

  /// Snaps each weight to its nearest rational with denominator at most
  /// max_den (continued fractions), then renormalizes exactly.
  static Measure from_doubles(const FiniteGroup& g, const std::vector<double>& p, long max_den = 1L << 20) {
    if (p.size() != g.order()) throw std::invalid_argument("measure: weight count must equal group order");
    std::vector<Rational> w(p.size());
    Rational total = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
      w[i] = nearest_rational(std::max(p[i], 0.0), max_den);
      total += w[i];
    }
    if (total == 0) throw std::invalid_argument("measure: weights must have positive total");
    for (auto& v : w) v /= total;
    return Measure(g, std::move(w));
  }

  /// Best rational approximation of x >= 0 with denominator <= max_den.
  static Rational nearest_rational(double x, long max_den) {
    if (!(x >= 0) || !std::isfinite(x)) throw std::invalid_argument("nearest_rational: need finite x >= 0");
    // Convergents h/k of the continued fraction of x.
    long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
    double r = x;
    for (int step = 0; step < 64; ++step) {
      const double fl = std::floor(r);
      if (fl > 1e15) break;
      const long a = static_cast<long>(fl);
      if (k1 != 0 && a > (max_den - k0) / k1) {
        // Semiconvergent with the largest admissible coefficient, if closer.
        const long t = (max_den - k0) / k1;
        const Rational semi = make_rational(h0 + t * h1, k0 + t * k1);
        const Rational conv = make_rational(h1, k1);
        const Rational xq(x);
        return abs(semi - xq) < abs(conv - xq) ? semi : conv;
      }
      const long h2 = a * h1 + h0, k2 = a * k1 + k0;
      h0 = h1;
      h1 = h2;
      k0 = k1;
      k1 = k2;
      const double frac = r - fl;
      if (frac < 1e-18) break;
      r = 1.0 / frac;
    }
    return make_rational(h1, k1);
  }

  const FiniteGroup& group() const { return *group_; }
  const std::vector<Rational>& weights() const { return w_; }
  const Rational& operator[](Element x) const { return w_[x]; }

  Rational operator()(const GroupSubset& a) const {
    if (&a.group() != group_) throw std::invalid_argument("measure: subset belongs to a different group");
    Rational s = 0;
    for (Element x : a.elements()) s += w_[x];
    return s;
  }

  std::vector<double> to_doubles() const {
    std::vector<double> out;
    out.reserve(w_.size());
    for (const auto& v : w_) out.push_back(v.get_d());
    return out;
  }

  bool operator==(const Measure& o) const { return group_ == o.group_ && w_ == o.w_; }

 private:
  const FiniteGroup* group_;
  std::vector<Rational> w_;
};

/// mu * nu: the image of mu x nu under multiplication.
inline Measure convolve(const Measure& mu, const Measure& nu) {
  if (&mu.group() != &nu.group()) throw std::invalid_argument("convolve: measures on different groups");
  const FiniteGroup& g = mu.group();
  std::vector<Rational> w(g.order(), Rational(0));
  for (Element a = 0; a < g.order(); ++a) {
    if (mu[a] == 0) continue;
    for (Element b = 0; b < g.order(); ++b)
      if (nu[b] != 0) w[g.mul(a, b)] += mu[a] * nu[b];
  }
  return Measure(g, std::move(w));
}

}  // namespace partition_bounds::densities
