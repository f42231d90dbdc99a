#pragma once

#include <array>
#include <cstdint>

namespace robustest {

/// One Philox4x32-10 block: 128-bit counter, 64-bit key, 10 rounds.
/// Matches the Random123 reference implementation bit for bit.
std::array<std::uint32_t, 4> philox4x32_10(std::array<std::uint32_t, 4> counter,
                                           std::array<std::uint32_t, 2> key) noexcept;

/// SplitMix64 finalizer; used to derive child stream ids.
std::uint64_t mix64(std::uint64_t x) noexcept;

/// Deterministic, splittable random stream built on Philox4x32-10.
///
/// The key is the 64-bit seed. The counter holds a 64-bit block index in its
/// low words and the 64-bit stream id in its high words, so streams sharing a
/// seed but differing in stream id never overlap. A stream is a small value
/// type; copy it to fork a replay.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream_id() const noexcept { return stream_id_; }

  std::uint64_t next_u64() noexcept;
  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform() noexcept;

  /// Independent child stream with the same seed and a hashed stream id.
  RngStream split(std::uint64_t child) const noexcept;

 private:
  void refill() noexcept;

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  unsigned next_ = 2;
};

}  // namespace robustest
