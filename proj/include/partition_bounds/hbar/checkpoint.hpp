#pragma once

#include <zlib.h>

#include <array>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "partition_bounds/hbar/generation.hpp"

namespace partition_bounds::hbar {

/// Progress of an hbar search that a checkpoint carries alongside the state
/// being saturated. Zero means "not established".
struct SearchContext {
  std::uint32_t known_lower = 0;  // largest c shown not to generate zero
  std::uint32_t known_upper = 0;  // smallest c shown to generate zero
  std::uint64_t upper_index = 0;
  std::uint64_t upper_round = 0;
  std::uint64_t lower_rounds = 0;
  std::uint64_t lower_vectors = 0;

  bool operator==(const SearchContext&) const = default;
};

struct Checkpoint {
  GenerationState state;
  SearchContext search;

  bool operator==(const Checkpoint&) const = default;
};

class CheckpointError : public std::runtime_error {
 public:
  enum class Kind { io, bad_magic, version_mismatch, truncated, checksum, dimension_mismatch, malformed };

  CheckpointError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

inline constexpr std::array<char, 8> kCheckpointMagic{'P', 'B', 'H', 'B', 'A', 'R', 'C', 'K'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

namespace detail {

class ByteWriter {
 public:
  void raw(const void* p, std::size_t len) {
    const auto* c = static_cast<const unsigned char*>(p);
    bytes.insert(bytes.end(), c, c + len);
  }
  template <class T>
  void le(T v) {
    for (std::size_t i = 0; i < sizeof(T); ++i) bytes.push_back(static_cast<unsigned char>(v >> (8 * i)));
  }
  void vectors(const std::vector<PackedVector>& vs) {
    le<std::uint64_t>(vs.size());
    for (PackedVector v : vs) le<std::uint64_t>(v);
  }
  std::vector<unsigned char> bytes;
};

class ByteReader {
 public:
  ByteReader(const unsigned char* p, std::size_t len) : p_(p), len_(len) {}

  template <class T>
  T le() {
    need(sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(p_[at_ + i]) << (8 * i);
    at_ += sizeof(T);
    return v;
  }
  std::vector<PackedVector> vectors() {
    const auto count = le<std::uint64_t>();
    if (count > (len_ - at_) / 8) throw CheckpointError(CheckpointError::Kind::malformed, "checkpoint: vector count exceeds payload");
    std::vector<PackedVector> vs(count);
    for (auto& v : vs) v = le<std::uint64_t>();
    return vs;
  }
  std::size_t remaining() const { return len_ - at_; }

 private:
  void need(std::size_t k) const {
    if (len_ - at_ < k) throw CheckpointError(CheckpointError::Kind::malformed, "checkpoint: payload ends inside a field");
  }
  const unsigned char* p_;
  std::size_t len_;
  std::size_t at_ = 0;
};

inline std::uint32_t crc32_of(const unsigned char* p, std::size_t len) {
  uLong crc = crc32(0L, Z_NULL, 0);
  while (len > 0) {
    const auto chunk = static_cast<uInt>(std::min<std::size_t>(len, 1u << 30));
    crc = crc32(crc, p, chunk);
    p += chunk;
    len -= chunk;
  }
  return static_cast<std::uint32_t>(crc);
}

// Header: magic, version, payload length. The payload follows, then a
// CRC-32 of header and payload.
inline constexpr std::size_t kHeaderSize = 8 + 4 + 8;

}  // namespace detail

/// Serializes a checkpoint. All integers are little-endian.
inline std::vector<unsigned char> encode_checkpoint(const Checkpoint& ck) {
  const GenerationState& s = ck.state;
  detail::ByteWriter payload;
  payload.le<std::uint32_t>(static_cast<std::uint32_t>(s.dimension()));
  payload.le<std::uint8_t>(static_cast<std::uint8_t>(s.reduction));
  payload.le<std::uint64_t>(s.h.value());
  payload.le<std::uint64_t>(s.round);
  for (std::size_t i = 0; i < s.dimension(); ++i) {
    payload.le<std::uint8_t>(s.dirty[i] ? 1 : 0);
    payload.vectors(s.sets[i]);
    payload.vectors(s.fresh[i]);
  }
  payload.le(ck.search.known_lower);
  payload.le(ck.search.known_upper);
  payload.le(ck.search.upper_index);
  payload.le(ck.search.upper_round);
  payload.le(ck.search.lower_rounds);
  payload.le(ck.search.lower_vectors);

  detail::ByteWriter out;
  out.raw(kCheckpointMagic.data(), kCheckpointMagic.size());
  out.le(kCheckpointVersion);
  out.le<std::uint64_t>(payload.bytes.size());
  out.raw(payload.bytes.data(), payload.bytes.size());
  out.le(detail::crc32_of(out.bytes.data(), out.bytes.size()));
  return std::move(out.bytes);
}

/// Parses a checkpoint. If `expected_dimension` is given, a state of any
/// other dimension is rejected.
inline Checkpoint decode_checkpoint(const std::vector<unsigned char>& bytes,
                                    std::optional<std::size_t> expected_dimension = std::nullopt) {
  using Kind = CheckpointError::Kind;
  if (bytes.size() < kCheckpointMagic.size()) throw CheckpointError(Kind::truncated, "checkpoint: file too short");
  if (std::memcmp(bytes.data(), kCheckpointMagic.data(), kCheckpointMagic.size()) != 0)
    throw CheckpointError(Kind::bad_magic, "checkpoint: not a checkpoint file");
  if (bytes.size() < detail::kHeaderSize) throw CheckpointError(Kind::truncated, "checkpoint: header truncated");
  detail::ByteReader head(bytes.data() + kCheckpointMagic.size(), detail::kHeaderSize - kCheckpointMagic.size());
  const auto version = head.le<std::uint32_t>();
  if (version != kCheckpointVersion)
    throw CheckpointError(Kind::version_mismatch, "checkpoint: format version " + std::to_string(version) +
                                                      ", expected " + std::to_string(kCheckpointVersion));
  const auto length = head.le<std::uint64_t>();
  const std::size_t available = bytes.size() - detail::kHeaderSize;
  if (available < 4 || length > available - 4) throw CheckpointError(Kind::truncated, "checkpoint: file truncated");
  if (length != available - 4) throw CheckpointError(Kind::malformed, "checkpoint: trailing bytes after checksum");
  detail::ByteReader tail(bytes.data() + detail::kHeaderSize + length, 4);
  const auto stored = tail.le<std::uint32_t>();
  if (stored != detail::crc32_of(bytes.data(), detail::kHeaderSize + length))
    throw CheckpointError(Kind::checksum, "checkpoint: checksum mismatch");

  detail::ByteReader in(bytes.data() + detail::kHeaderSize, length);
  Checkpoint ck;
  GenerationState& s = ck.state;
  const auto n = in.le<std::uint32_t>();
  if (n == 0 || n > kMaxDimension) throw CheckpointError(Kind::malformed, "checkpoint: invalid dimension");
  if (expected_dimension && *expected_dimension != n)
    throw CheckpointError(Kind::dimension_mismatch, "checkpoint: state has n=" + std::to_string(n) +
                                                        ", run has n=" + std::to_string(*expected_dimension));
  const auto reduction = in.le<std::uint8_t>();
  if (reduction > 1) throw CheckpointError(Kind::malformed, "checkpoint: unknown reduction");
  s.reduction = static_cast<Reduction>(reduction);
  try {
    s.h = Bound(n, in.le<std::uint64_t>());
  } catch (const std::invalid_argument& e) {
    throw CheckpointError(Kind::malformed, std::string("checkpoint: ") + e.what());
  }
  s.round = in.le<std::uint64_t>();
  s.sets.resize(n);
  s.fresh.resize(n);
  s.dirty.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    s.dirty[i] = in.le<std::uint8_t>() != 0;
    s.sets[i] = in.vectors();
    s.fresh[i] = in.vectors();
  }
  ck.search.known_lower = in.le<std::uint32_t>();
  ck.search.known_upper = in.le<std::uint32_t>();
  ck.search.upper_index = in.le<std::uint64_t>();
  ck.search.upper_round = in.le<std::uint64_t>();
  ck.search.lower_rounds = in.le<std::uint64_t>();
  ck.search.lower_vectors = in.le<std::uint64_t>();
  if (in.remaining() != 0) throw CheckpointError(Kind::malformed, "checkpoint: unexpected payload bytes");
  return ck;
}

/// Writes atomically: the file is written beside `path` and renamed over it.
inline void checkpoint_save(const Checkpoint& ck, const std::filesystem::path& path) {
  const auto bytes = encode_checkpoint(ck);
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CheckpointError(CheckpointError::Kind::io, "checkpoint: cannot open " + tmp.string());
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw CheckpointError(CheckpointError::Kind::io, "checkpoint: write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw CheckpointError(CheckpointError::Kind::io, "checkpoint: rename failed: " + ec.message());
}

inline void checkpoint_save(const GenerationState& state, const std::filesystem::path& path) {
  checkpoint_save(Checkpoint{state, {}}, path);
}

inline Checkpoint checkpoint_load(const std::filesystem::path& path,
                                  std::optional<std::size_t> expected_dimension = std::nullopt) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CheckpointError(CheckpointError::Kind::io, "checkpoint: cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return decode_checkpoint(bytes, expected_dimension);
}

}  // namespace partition_bounds::hbar
