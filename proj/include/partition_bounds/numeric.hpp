#pragma once

#include <gmpxx.h>

#include <string>

namespace partition_bounds {

/// Arbitrary-precision non-negative integer.
using BigNat = mpz_class;

/// Exact rational; always kept in canonical (reduced) form.
using Rational = mpq_class;

inline std::string to_string(const BigNat& v) { return v.get_str(); }

/// Serializes as "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational make_rational(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational parse_rational(const std::string& s) {
  Rational q(s);
  q.canonicalize();
  return q;
}

}  // namespace partition_bounds
