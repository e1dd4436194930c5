#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace partition_bounds::hbar {

/// Maximum dimension supported by the packed representation: one byte
/// lane per coordinate in a 64-bit word.
inline constexpr std::size_t kMaxDimension = 8;
/// Largest coordinate a lane can hold.
inline constexpr unsigned kMaxConstant = 255;

/// An element of omega^n with every coordinate below 256, packed one
/// coordinate per byte (coordinate i in bits [8i, 8i+8)).
using PackedVector = std::uint64_t;

inline constexpr PackedVector kZeroVector = 0;

inline constexpr std::uint64_t kLaneHigh = 0x8080808080808080ULL;
inline constexpr std::uint64_t kLaneLow = 0x7f7f7f7f7f7f7f7fULL;

inline constexpr unsigned lane(PackedVector v, std::size_t i) {
  return static_cast<unsigned>((v >> (8 * i)) & 0xffU);
}

inline constexpr PackedVector with_lane(PackedVector v, std::size_t i, unsigned value) {
  const std::uint64_t mask = 0xffULL << (8 * i);
  return (v & ~mask) | (static_cast<std::uint64_t>(value & 0xffU) << (8 * i));
}

/// The characteristic vector of the singleton {i}.
inline constexpr PackedVector unit_vector(std::size_t i) { return 1ULL << (8 * i); }

inline constexpr PackedVector zero_lane(PackedVector v, std::size_t i) {
  return v & ~(0xffULL << (8 * i));
}

/// True iff the support of v is contained in {i}.
inline constexpr bool supported_on(PackedVector v, std::size_t i) { return zero_lane(v, i) == 0; }

inline unsigned lane_sum(PackedVector v) {
  // Horizontal byte sum; lanes are at most 255 and there are 8 of them.
  std::uint64_t s = (v & 0x00ff00ff00ff00ffULL) + ((v >> 8) & 0x00ff00ff00ff00ffULL);
  s = (s & 0x0000ffff0000ffffULL) + ((s >> 16) & 0x0000ffff0000ffffULL);
  s = (s & 0x00000000ffffffffULL) + (s >> 32);
  return static_cast<unsigned>(s);
}

/// Coordinatewise a <= b, valid when every lane of b is at most 127 and
/// every lane of a is at most b's lane plus 128.
inline constexpr bool leq_swar(PackedVector a, PackedVector b) {
  return (((b | kLaneHigh) - a) & kLaneHigh) == kLaneHigh;
}

inline bool leq_scalar(PackedVector a, PackedVector b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (lane(a, i) > lane(b, i)) return false;
  }
  return true;
}

inline PackedVector pack(std::span<const unsigned> coords) {
  if (coords.size() > kMaxDimension) throw std::invalid_argument("vector dimension exceeds 8");
  PackedVector v = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] > 255) throw std::invalid_argument("coordinate exceeds 255");
    v = with_lane(v, i, coords[i]);
  }
  return v;
}

inline std::vector<unsigned> unpack(PackedVector v, std::size_t n) {
  std::vector<unsigned> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = lane(v, i);
  return out;
}

inline std::string format_vector(PackedVector v, std::size_t n) {
  std::string s = "(";
  for (std::size_t i = 0; i < n; ++i) {
    if (i) s += ',';
    s += std::to_string(lane(v, i));
  }
  return s + ")";
}

/// The dominating bound h together with the arithmetic it licenses.
/// Sums are only ever formed from two vectors that are each <= h.
class Bound {
 public:
  Bound() = default;
  Bound(std::size_t n, PackedVector h) : n_(n), h_(h) {
    if (n == 0) throw std::invalid_argument("dimension must be at least 1");
    if (n > kMaxDimension) throw std::invalid_argument("dimension exceeds 8");
    unsigned top = 0;
    for (std::size_t i = 0; i < n; ++i) top = std::max(top, lane(h, i));
    if (n < kMaxDimension && (h >> (8 * n)) != 0)
      throw std::invalid_argument("bound has nonzero lanes beyond its dimension");
    swar_ = top <= 127;
  }

  static Bound constant(std::size_t n, unsigned c) {
    if (c > 255) throw std::invalid_argument("bound coordinate exceeds 255");
    PackedVector h = 0;
    for (std::size_t i = 0; i < n; ++i) h = with_lane(h, i, c);
    return Bound(n, h);
  }

  std::size_t dimension() const { return n_; }
  PackedVector value() const { return h_; }

  /// Writes a + b to out and returns true iff a + b <= h.
  bool add(PackedVector a, PackedVector b, PackedVector& out) const {
    if (swar_) {
      out = a + b;
      return leq_swar(out, h_);
    }
    PackedVector s = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      const unsigned x = lane(a, i) + lane(b, i);
      if (x > lane(h_, i)) return false;
      s = with_lane(s, i, x);
    }
    out = s;
    return true;
  }

  bool contains(PackedVector v) const { return swar_ ? leq_swar(v, h_) : leq_scalar(v, h_, n_); }

  /// Coordinatewise a <= b for vectors inside the bound.
  bool leq(PackedVector a, PackedVector b) const {
    return swar_ ? leq_swar(a, b) : leq_scalar(a, b, n_);
  }

  bool operator==(const Bound&) const = default;

 private:
  std::size_t n_ = 0;
  PackedVector h_ = 0;
  bool swar_ = true;
};

}  // namespace partition_bounds::hbar
