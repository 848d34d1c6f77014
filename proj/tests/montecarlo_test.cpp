#include "stochdyn/montecarlo.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <future>

#include "oracles.hpp"
#include "stochdyn/error.hpp"
#include "stochdyn/random.hpp"
#include "test_util.hpp"

namespace stochdyn {
namespace {

using testing::code_of;
using testing::from_rows;

StochasticMatrix example_a() {
  return validate_stochastic(Matrix{{0.8, 0.1}, {0.2, 0.9}});
}

TEST(SplitMix64, ReferenceOutputs) {
  // Published outputs of the reference splitmix64.c for seed 1234567.
  SplitMix64 g(1234567);
  EXPECT_EQ(g.next(), 6457827717110365317ull);
  EXPECT_EQ(g.next(), 3203168211198807973ull);
  EXPECT_EQ(g.next(), 9817491932198370423ull);
  EXPECT_EQ(g.next(), 4593380528125082431ull);
  EXPECT_EQ(g.next(), 16408922859458223821ull);
}

TEST(Xoshiro256StarStar, MatchesIndependentImplementation) {
  // Computed with a separate implementation of the reference algorithm,
  // state seeded from four SplitMix64 outputs.
  Xoshiro256StarStar walk(42, Stream::kWalk);
  EXPECT_EQ(walk(), 1546998764402558742ull);
  EXPECT_EQ(walk(), 6990951692964543102ull);
  EXPECT_EQ(walk(), 12544586762248559009ull);
  Xoshiro256StarStar initial(42, Stream::kInitialStates);
  EXPECT_EQ(initial(), 5766981335298035530ull);
  EXPECT_EQ(initial(), 13414075677763163907ull);
  EXPECT_EQ(initial(), 6818771422820058410ull);
}

TEST(Xoshiro256StarStar, UniformAndBoundedRanges) {
  Xoshiro256StarStar g(9);
  std::vector<int> hits(21, 0);
  for (int i = 0; i < 100000; ++i) {
    const double u = g.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    const std::int64_t k = g.uniform_int(-10, 10);
    ASSERT_GE(k, -10);
    ASSERT_LE(k, 10);
    ++hits[static_cast<std::size_t>(k + 10)];
  }
  // Expected 100000/21 ~ 4762 per value; 5 sigma is ~330.
  for (int h : hits) EXPECT_NEAR(h, 100000.0 / 21, 350);
}

TEST(SampleWalk, ZeroStepsAndSwap) {
  const Walk w = sample_walk(example_a(), 1, 0, 5);
  EXPECT_EQ(w.states, (std::vector<std::size_t>{1}));
  const StochasticMatrix swap = validate_stochastic(Matrix{{0, 1}, {1, 0}});
  EXPECT_EQ(sample_walk(swap, 0, 4, 123).states,
            (std::vector<std::size_t>{0, 1, 0, 1, 0}));
  EXPECT_EQ(code_of([&] { sample_walk(swap, 2, 4, 0); }),
            ErrorCode::kInvalidArgument);
}

// Replays the first steps with the same generator and an inline inverse CDF.
TEST(SampleWalk, InverseCdfOverColumns) {
  const oracle::Rows rows{{0.8, 0.1}, {0.2, 0.9}};
  const Walk w = sample_walk(example_a(), 0, 50, 77);
  Xoshiro256StarStar g(77, Stream::kWalk);
  std::size_t state = 0;
  for (std::size_t k = 1; k <= 50; ++k) {
    const double u = g.uniform01();
    state = u < rows[0][state] ? 0 : 1;
    EXPECT_EQ(w.states[k], state) << "step " << k;
  }
}

TEST(SampleWalk, ExampleStationaryFrequencies) {
  const Walk w = sample_walk(example_a(), 0, 100000, 1);
  const Vec freq = empirical_distribution(w, 1000, 2);
  EXPECT_NEAR(freq[0], 1.0 / 3, 0.02);
  EXPECT_NEAR(freq[1], 2.0 / 3, 0.02);
}

TEST(EmpiricalDistribution, Counting) {
  const Walk w{{0, 1, 1, 0}, 0};
  EXPECT_EQ(empirical_distribution(w, 0, 2), (Vec{0.5, 0.5}));
  EXPECT_EQ(empirical_distribution(w, 2, 2), (Vec{0.5, 0.5}));
  EXPECT_EQ(empirical_distribution(w, 3, 3), (Vec{1, 0, 0}));
  EXPECT_EQ(code_of([&] { empirical_distribution(w, 4, 2); }),
            ErrorCode::kBurnInTooLarge);
  EXPECT_EQ(code_of([&] { empirical_distribution(w, 0, 1); }),
            ErrorCode::kInvalidArgument);
}

TEST(RandomInitialStates, IntegersInRangeAndSeeded) {
  const std::vector<Vec> a = random_initial_states(50, 3, 0);
  ASSERT_EQ(a.size(), 50u);
  for (const Vec& v : a) {
    ASSERT_EQ(v.size(), 3u);
    for (double x : v.entries()) {
      EXPECT_EQ(x, std::round(x));
      EXPECT_GE(x, -10.0);
      EXPECT_LE(x, 10.0);
    }
  }
  EXPECT_EQ(random_initial_states(50, 3, 0), a);
  EXPECT_NE(random_initial_states(50, 3, 1), a);
  EXPECT_TRUE(random_initial_states(0, 2, 0).empty());
}

TEST(MonteCarloProperties, Deterministic) {
  const StochasticMatrix a = example_a();
  EXPECT_EQ(sample_walk(a, 0, 5000, 99), sample_walk(a, 0, 5000, 99));
  EXPECT_NE(sample_walk(a, 0, 5000, 99).states,
            sample_walk(a, 0, 5000, 100).states);
}

TEST(MonteCarloProperties, NeverTakesZeroProbabilityTransitions) {
  Xoshiro256StarStar rng(31);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.bounded(4);
    oracle::Rows rows = oracle::random_stochastic(n, rng);
    // Zero out some entries per column and renormalize.
    for (std::size_t j = 0; j < n; ++j) {
      double total = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (i != j && rng.bounded(2) == 0) rows[i][j] = 0.0;
        total += rows[i][j];
      }
      for (std::size_t i = 0; i < n; ++i) rows[i][j] /= total;
    }
    const StochasticMatrix a = validate_stochastic(from_rows(rows));
    const Walk w = sample_walk(a, 0, 2000, rng());
    for (std::size_t k = 1; k < w.states.size(); ++k)
      ASSERT_GT(rows[w.states[k]][w.states[k - 1]], 0.0);
  }
}

TEST(MonteCarloProperties, TransitionFrequenciesMatchColumns) {
  const oracle::Rows rows{{0.5, 0.1, 0.3}, {0.2, 0.6, 0.3}, {0.3, 0.3, 0.4}};
  const Walk w = sample_walk(validate_stochastic(from_rows(rows)), 0, 300000, 8);
  std::vector<std::vector<double>> count(3, std::vector<double>(3, 0.0));
  std::vector<double> from(3, 0.0);
  for (std::size_t k = 1; k < w.states.size(); ++k) {
    count[w.states[k]][w.states[k - 1]] += 1;
    from[w.states[k - 1]] += 1;
  }
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < 3; ++i)
      EXPECT_NEAR(count[i][j] / from[j], rows[i][j], 0.01);
}

TEST(MonteCarloProperties, FiveSeedsConvergeInParallel) {
  const StochasticMatrix a = example_a();
  std::vector<std::future<Vec>> runs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    runs.push_back(std::async(std::launch::async, [&a, seed] {
      return empirical_distribution(sample_walk(a, 0, 100000, seed), 1000, 2);
    }));
  for (auto& r : runs)
    EXPECT_LE(distance_inf(r.get(), Vec{1.0 / 3, 2.0 / 3}), 0.02);
}

}  // namespace
}  // namespace stochdyn
