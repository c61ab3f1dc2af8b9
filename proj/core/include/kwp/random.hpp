#pragma once

#include <cstdint>
#include <limits>

namespace kwp {

/// SplitMix64 step; used for seeding and for deriving independent streams.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// xoshiro256** 1.0 (Blackman and Vigna), seeded through SplitMix64.
///
/// This is the library's only generator: sample(), the CLI and the Monte
/// Carlo study all draw from it, so a seed fixes every output bit-for-bit.
class Xoshiro256 {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256(std::uint64_t seed) noexcept;

  /// Generator for a sub-stream identified by (seed, i, j), e.g. sample size
  /// and replication index.  Different triples give unrelated streams.
  static Xoshiro256 stream(std::uint64_t seed, std::uint64_t i, std::uint64_t j) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

  result_type operator()() noexcept;

  /// Uniform on the open interval (0, 1): (m + 1/2) 2^-53 for a 53-bit m.
  double uniform_open() noexcept;

 private:
  std::uint64_t s_[4];
};

}  // namespace kwp
