#pragma once

#include <array>
#include <cstdint>

namespace loopfluct {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Philox4x32 with 10 rounds (Salmon et al., counter-based).
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key);

/// Standard normal quantile, Wichura's AS241 (PPND16), relative accuracy ~1e-16.
double normal_quantile(double p);

/// Reproducible random stream.
///
/// Stream derivation: the Philox key is the 64-bit seed (low word first); the 128-bit
/// counter is (block_lo, block_hi, stream_lo, stream_hi). Each stream therefore owns
/// a disjoint 2^64-block slice of the 2^128 counter space, and identical
/// (seed, stream_id) pairs replay identical draws.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id) : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }
  /// Number of 32-bit words consumed so far.
  std::uint64_t position() const { return block_ * 4 + used_ - 4; }

  std::uint32_t next_u32() {
    if (used_ == 4) refill();
    return buffer_[used_++];
  }
  std::uint64_t next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }
  /// Uniform on the open interval (0, 1) with 53-bit resolution.
  double uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }
  /// Uniform integer in [0, n) by rejection (unbiased). n must be positive.
  std::uint64_t below(std::uint64_t n);
  double normal() { return normal_quantile(uniform()); }

  /// Stream with the same seed and a different id.
  RngStream substream(std::uint64_t stream_id) const { return {seed_, stream_id}; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  PhiloxCounter buffer_{};
  unsigned used_ = 4;
};

}  // namespace loopfluct
