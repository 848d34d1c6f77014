#include "stochdyn/random.hpp"

#include <bit>

namespace stochdyn {

std::uint64_t SplitMix64::next() noexcept {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Xoshiro256StarStar::Xoshiro256StarStar(std::uint64_t seed,
                                       Stream stream) noexcept {
  SplitMix64 expand(seed);
  for (auto& word : s_) word = expand.next();
  for (auto i = static_cast<std::uint64_t>(stream); i > 0; --i) jump();
}

Xoshiro256StarStar::result_type Xoshiro256StarStar::operator()() noexcept {
  const std::uint64_t result = std::rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = std::rotl(s_[3], 45);
  return result;
}

void Xoshiro256StarStar::jump() noexcept {
  static constexpr std::uint64_t kJump[] = {
      0x180ec6d33cfd0abaULL, 0xd5a61266f0c9392cULL, 0xa9582618e03fc9aaULL,
      0x39abdc4529b1661cULL};
  std::uint64_t acc[4] = {0, 0, 0, 0};
  for (std::uint64_t word : kJump) {
    for (int b = 0; b < 64; ++b) {
      if (word & (std::uint64_t{1} << b)) {
        for (int k = 0; k < 4; ++k) acc[k] ^= s_[k];
      }
      (*this)();
    }
  }
  for (int k = 0; k < 4; ++k) s_[k] = acc[k];
}

double Xoshiro256StarStar::uniform01() noexcept {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

std::uint64_t Xoshiro256StarStar::bounded(std::uint64_t bound) noexcept {
  // Largest multiple of bound that fits; draws at or above it are rejected.
  const std::uint64_t limit = max() - max() % bound;
  for (;;) {
    const std::uint64_t x = (*this)();
    if (x < limit || limit == 0) return x % bound;
  }
}

std::int64_t Xoshiro256StarStar::uniform_int(std::int64_t lo,
                                             std::int64_t hi) noexcept {
  const auto range = static_cast<std::uint64_t>(hi) - static_cast<std::uint64_t>(lo) + 1;
  if (range == 0) return static_cast<std::int64_t>((*this)());
  return lo + static_cast<std::int64_t>(bounded(range));
}

}  // namespace stochdyn
