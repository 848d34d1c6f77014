#pragma once

#include <cstdint>
#include <limits>

namespace stochdyn {

// SplitMix64 (Steele, Lea, Flood 2014). Used only to expand a 64-bit seed
// into generator state.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
  std::uint64_t next() noexcept;

 private:
  std::uint64_t state_;
};

// Independent substreams of one seed. Each stream is 2^128 draws apart.
enum class Stream : std::uint64_t {
  kWalk = 0,
  kInitialStates = 1,
};

// xoshiro256** 1.0 (Blackman, Vigna 2018). State is four SplitMix64 outputs
// of the seed; stream s applies the 2^128-step jump s times. Every mapping to
// doubles and integers below is defined here rather than by <random>
// distributions, so sequences are identical on every platform.
class Xoshiro256StarStar {
 public:
  using result_type = std::uint64_t;

  explicit Xoshiro256StarStar(std::uint64_t seed,
                              Stream stream = Stream::kWalk) noexcept;

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() noexcept;

  // Advances the state by 2^128 draws.
  void jump() noexcept;

  // (x >> 11) * 2^-53, uniform on [0, 1).
  double uniform01() noexcept;

  // Uniform on [0, bound) by rejection of the biased tail; bound >= 1.
  std::uint64_t bounded(std::uint64_t bound) noexcept;

  // Uniform integer on [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;

 private:
  std::uint64_t s_[4];
};

}  // namespace stochdyn
