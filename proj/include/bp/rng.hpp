#pragma once

#include <array>
#include <cstdint>

#include "bp/belief.hpp"

namespace bp {

// Stream ids for the simulation harness. States and mechanism sampling draw
// from disjoint streams so a trace replays identically whether or not other
// randomness is consumed in between.
inline constexpr std::uint64_t kStateStream = 0;
inline constexpr std::uint64_t kMechanismStream = 1;

// Counter-based generator (Philox4x32, 10 rounds). Output is a pure function
// of (seed, stream, block index), which makes every draw reproducible and
// lets parallel runs share nothing.
class Philox {
 public:
  Philox(std::uint64_t seed, std::uint64_t stream);

  // One keyed permutation of a 128-bit counter block. Exposed for known-answer
  // tests against the published vectors.
  static std::array<std::uint32_t, 4> block(const std::array<std::uint32_t, 2>& key,
                                            const std::array<std::uint32_t, 4>& counter);

  std::uint32_t next_u32();

  // Uniform double in [0, 1) with 53 random bits.
  double uniform();

  // Index drawn from an unnormalized weight vector. Negative entries are
  // treated as zero; throws DomainError when no weight is positive.
  int sample(const Vec& weights);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t block_index_ = 0;
  std::uint64_t stream_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffer_pos_ = 4;
};

}  // namespace bp
