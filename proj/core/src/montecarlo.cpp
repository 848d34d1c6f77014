#include "stochdyn/montecarlo.hpp"

#include <string>

#include "stochdyn/error.hpp"
#include "stochdyn/random.hpp"

namespace stochdyn {

namespace {

constexpr std::int64_t kRandomEntryMin = -10;
constexpr std::int64_t kRandomEntryMax = 10;

}  // namespace

Walk sample_walk(const StochasticMatrix& a, std::size_t start,
                 std::size_t steps, std::uint64_t seed) {
  const std::size_t n = a.dim();
  if (start >= n)
    throw Error(ErrorCode::kInvalidArgument,
                "start state " + std::to_string(start) + " out of range for " +
                    std::to_string(n) + " states");

  // Last index with nonzero probability in each column.
  std::vector<std::size_t> last_support(n, 0);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (a(i, j) > 0.0) last_support[j] = i;

  Xoshiro256StarStar rng(seed, Stream::kWalk);
  Walk walk{{}, seed};
  walk.states.reserve(steps + 1);
  walk.states.push_back(start);
  std::size_t j = start;
  for (std::size_t k = 0; k < steps; ++k) {
    const double u = rng.uniform01();
    std::size_t next = last_support[j];
    double cumulative = 0.0;
    for (std::size_t i = 0; i < last_support[j]; ++i) {
      cumulative += a(i, j);
      if (u < cumulative) {
        next = i;
        break;
      }
    }
    walk.states.push_back(next);
    j = next;
  }
  return walk;
}

Vec empirical_distribution(const Walk& w, std::size_t burn_in,
                           std::size_t dim) {
  if (burn_in >= w.states.size())
    throw Error(ErrorCode::kBurnInTooLarge,
                "burn-in " + std::to_string(burn_in) +
                    " leaves no samples from a walk of length " +
                    std::to_string(w.states.size()));
  std::vector<std::size_t> counts(dim, 0);
  for (std::size_t k = burn_in; k < w.states.size(); ++k) {
    if (w.states[k] >= dim)
      throw Error(ErrorCode::kInvalidArgument,
                  "walk visits state " + std::to_string(w.states[k]) +
                      " outside dimension " + std::to_string(dim));
    ++counts[w.states[k]];
  }
  const double total = static_cast<double>(w.states.size() - burn_in);
  std::vector<double> freq(dim);
  for (std::size_t i = 0; i < dim; ++i)
    freq[i] = static_cast<double>(counts[i]) / total;
  return Vec(std::move(freq));
}

std::vector<Vec> random_initial_states(std::size_t count, std::size_t dim,
                                       std::uint64_t seed) {
  Xoshiro256StarStar rng(seed, Stream::kInitialStates);
  std::vector<Vec> out;
  out.reserve(count);
  for (std::size_t r = 0; r < count; ++r) {
    std::vector<double> entries(dim);
    for (double& e : entries)
      e = static_cast<double>(rng.uniform_int(kRandomEntryMin, kRandomEntryMax));
    out.emplace_back(std::move(entries));
  }
  return out;
}

}  // namespace stochdyn
