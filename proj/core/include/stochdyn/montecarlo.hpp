#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stochdyn/matrix.hpp"

namespace stochdyn {

// A sampled path of state indices; states[0] is the start.
struct Walk {
  std::vector<std::size_t> states;
  std::uint64_t seed = 0;

  friend bool operator==(const Walk&, const Walk&) = default;
};

// Samples `steps` transitions of the chain from `start`. From state j the
// next state is found by inverse CDF over column j of `a` with a uniform
// draw from Xoshiro256StarStar(seed, Stream::kWalk); the last state with
// nonzero probability absorbs round-off in the cumulative sum, so
// zero-probability transitions are never taken.
Walk sample_walk(const StochasticMatrix& a, std::size_t start,
                 std::size_t steps, std::uint64_t seed);

// Visit frequencies over states[burn_in..]. Throws BurnInTooLarge when
// burn_in >= states.size(), InvalidArgument when a state is >= dim.
Vec empirical_distribution(const Walk& w, std::size_t burn_in, std::size_t dim);

// `count` integer-valued vectors of length `dim` with entries uniform on
// [-10, 10], drawn from Xoshiro256StarStar(seed, Stream::kInitialStates).
std::vector<Vec> random_initial_states(std::size_t count, std::size_t dim,
                                       std::uint64_t seed);

}  // namespace stochdyn
