// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "cli.hpp"
#include "oracles.hpp"
#include "stochdyn/chain_spec.hpp"
#include "stochdyn/dynamics.hpp"
#include "stochdyn/error.hpp"
#include "stochdyn/montecarlo.hpp"
#include "stochdyn/random.hpp"
#include "stochdyn/spectral.hpp"
#include "stochdyn/trajectory_io.hpp"

namespace {

using namespace stochdyn;
using Clock = std::chrono::steady_clock;

const oracle::Rows kExampleRows{{0.8, 0.1}, {0.2, 0.9}};
const Vec kP{2, 4}, kQ{-6, 6}, kR{7, 2}, kS{-5, -4};

StochasticMatrix example_a() {
  return validate_stochastic(Matrix{{0.8, 0.1}, {0.2, 0.9}});
}

std::vector<double> as_std(const Vec& v) {
  return {v.entries().begin(), v.entries().end()};
}

Matrix from_rows(const oracle::Rows& rows) {
  std::vector<double> flat;
  for (const auto& r : rows) flat.insert(flat.end(), r.begin(), r.end());
  return Matrix(rows.size(), rows.size(), std::move(flat));
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos;
       pos = text.find(needle, pos + needle.size()))
    ++n;
  return n;
}

// A criterion body returns an empty string on success, else the reason.
struct Criterion {
  int id;
  const char* name;
  std::function<std::string()> check;
};

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string spectrum_reproduction() {
  const StochasticMatrix a = example_a();
  const auto t0 = Clock::now();
  const Spectrum s = eigen_decompose(a);
  const double ms = ms_since(t0);
  if (std::abs(s[0].value - 1.0) > 1e-12 || std::abs(s[1].value - 0.7) > 1e-12)
    return "eigenvalues off";
  if (oracle::sin_angle(as_std(s[0].vector), {1, 2}) > 1e-9 ||
      oracle::sin_angle(as_std(s[1].vector), {-1, 1}) > 1e-9)
    return "eigenvectors not parallel to [1,2], [-1,1]";
  if (ms >= 1.0) return "took " + std::to_string(ms) + " ms";
  return {};
}

std::string trajectory_endpoints() {
  const StochasticMatrix a = example_a();
  struct Case {
    Vec x0;
    std::vector<double> x1, x15;
  };
  const std::vector<Case> cases{{kP, {2, 4}, {2, 4}},
                                {kQ, {-4.2, 4.2}, {-0.0285, 0.0285}},
                                {kR, {5.8, 3.2}, {3.019, 5.981}},
                                {kS, {-4.4, -4.6}, {-3.0095, -5.9905}}};
  for (const Case& c : cases) {
    const Trajectory t = iterate_trajectory(a, c.x0, 15);
    for (std::size_t i = 0; i < 2; ++i) {
      if (std::abs(t[1][i] - c.x1[i]) > 1e-12) return "x1 mismatch";
      if (std::abs(t[15][i] - c.x15[i]) > 5e-5) return "x15 mismatch";
    }
  }
  return {};
}

std::string closed_form_equals_iteration() {
  const auto t0 = Clock::now();
  const StochasticMatrix a = example_a();
  const Spectrum s = eigen_decompose(a);
  Xoshiro256StarStar rng(2024);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const Vec x0{static_cast<double>(rng.uniform_int(-10, 10)),
                 static_cast<double>(rng.uniform_int(-10, 10))};
    const EigenCoordinates c = decompose_in_eigenbasis(s, x0);
    const Trajectory t = iterate_trajectory(a, x0, 60);
    for (std::size_t k = 0; k <= 60; ++k)
      worst = std::max(worst, distance_inf(closed_form_state(s, c, k), t[k]));
  }
  const double ms = ms_since(t0);
  if (worst > 1e-9) return "max deviation " + std::to_string(worst);
  if (ms >= 1000.0) return "took " + std::to_string(ms) + " ms";
  return {};
}

std::string steady_state_is_oblique() {
  const Spectrum s = eigen_decompose(example_a());
  const Vec star = steady_state(s, decompose_in_eigenbasis(s, kR));
  const std::vector<double> oracle200 = oracle::iterate(kExampleRows, as_std(kR), 200);
  const Vec oblique = project_onto_dominant(s, kR, ProjectionMode::kOblique);
  const Vec orthogonal = project_onto_dominant(s, kR, ProjectionMode::kOrthogonal);
  for (std::size_t i = 0; i < 2; ++i) {
    if (std::abs(star[i] - (i == 0 ? 3.0 : 6.0)) > 1e-12) return "x* != [3,6]";
    if (std::abs(star[i] - oracle200[i]) > 1e-12) return "x* != 200-step oracle";
    if (std::abs(star[i] - oblique[i]) > 1e-12) return "x* != oblique projection";
    if (std::abs(orthogonal[i] - (i == 0 ? 2.2 : 4.4)) > 1e-12)
      return "orthogonal projection != [2.2,4.4]";
  }
  if (distance_inf(oblique, orthogonal) < 0.5) return "projections too close";
  return {};
}

std::string exact_contraction() {
  const StochasticMatrix a = example_a();
  const Spectrum s = eigen_decompose(a);
  for (const Vec& x0 : {kP, kQ, kR, kS}) {
    const Vec star = steady_state(s, decompose_in_eigenbasis(s, x0));
    const Trajectory t = iterate_trajectory(a, x0, 31);
    if (distance_inf(t[0], star) <= 1e-12) continue;  // p is its own limit
    for (std::size_t k = 0; k <= 30; ++k) {
      const double ratio =
          distance_inf(t[k + 1], star) / distance_inf(t[k], star);
      if (std::abs(ratio - 0.7) > 1e-10)
        return "ratio " + std::to_string(ratio) + " at k=" + std::to_string(k);
    }
  }
  return {};
}

std::string stationary() {
  const StochasticMatrix a = example_a();
  const Vec pi = stationary_distribution(a);
  const std::vector<double> long_run = oracle::iterate(kExampleRows, {1, 0}, 400);
  const Vec api = mat_vec(a, pi);
  for (std::size_t i = 0; i < 2; ++i) {
    if (std::abs(pi[i] - (i == 0 ? 1.0 / 3 : 2.0 / 3)) > 1e-10) return "pi off";
    if (std::abs(pi[i] - long_run[i]) > 1e-10) return "pi != long iteration";
    if (std::abs(api[i] - pi[i]) > 1e-10) return "A pi != pi";
  }
  return {};
}

std::string monte_carlo() {
  const auto t0 = Clock::now();
  const StochasticMatrix a = example_a();
  const Vec pi{1.0 / 3, 2.0 / 3};
  std::vector<std::future<double>> runs;
  for (std::uint64_t seed = 1; seed <= 5; ++seed)
    runs.push_back(std::async(std::launch::async, [&a, &pi, seed] {
      return distance_inf(
          empirical_distribution(sample_walk(a, 0, 100000, seed), 1000, 2), pi);
    }));
  double worst = 0.0;
  for (auto& r : runs) worst = std::max(worst, r.get());
  const double ms = ms_since(t0);
  if (worst > 0.02) return "distance " + std::to_string(worst);
  if (ms >= 2000.0) return "took " + std::to_string(ms) + " ms";
  return {};
}

// Matrices with a complex subdominant pair have no real eigendecomposition;
// for those the dominant pair comes from power iteration and the rejection
// must agree with the characteristic-polynomial oracle.
std::string perron_sweep() {
  const auto t0 = Clock::now();
  Xoshiro256StarStar rng(8);
  int real_spectra = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 2 + rng.bounded(3);
    const oracle::Rows rows = oracle::random_stochastic(n, rng);
    const StochasticMatrix a = validate_stochastic(from_rows(rows));
    const std::string where = "matrix " + std::to_string(trial);

    const EigenPair dominant = power_iteration(a, 1e-13, 100000);
    if (std::abs(dominant.value - 1.0) > 1e-8) return where + ": dominant != 1";
    if (eigen_residual(a.matrix(), dominant) > 1e-10)
      return where + ": dominant residual";

    bool complex_pair = false;
    for (const auto& z : oracle::eigenvalues(rows)) {
      if (std::abs(z) > 1.0 + 1e-8) return where + ": oracle |lambda| > 1";
      if (std::abs(z.imag()) > 1e-7) complex_pair = true;
    }
    try {
      const Spectrum s = eigen_decompose(a);
      if (complex_pair) return where + ": complex spectrum not detected";
      ++real_spectra;
      if (std::abs(s[0].value - 1.0) > 1e-8) return where + ": lambda_1 != 1";
      for (const EigenPair& p : s.pairs()) {
        if (std::abs(p.value) > 1.0 + 1e-8) return where + ": |lambda| > 1";
        if (eigen_residual(a.matrix(), p) > 1e-10) return where + ": residual";
      }
    } catch (const SpectralError& e) {
      if (!complex_pair) return where + ": " + e.what();
      if (e.modulus() && *e.modulus() > 1.0 + 1e-8)
        return where + ": reported modulus > 1";
    }
  }
  const double ms = ms_since(t0);
  if (real_spectra < 300)
    return "only " + std::to_string(real_spectra) + " real spectra";
  if (ms >= 5000.0) return "took " + std::to_string(ms) + " ms";
  return {};
}

std::string parser_round_trip() {
  Xoshiro256StarStar rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t rows = 1 + rng.bounded(4), cols = 1 + rng.bounded(4);
    std::vector<double> entries(rows * cols);
    for (double& e : entries) e = (rng.uniform01() - 0.5) * std::pow(10.0, rng.uniform_int(-8, 8));
    ChainSpec spec{Matrix(rows, cols, std::move(entries)), {}};
    const std::size_t initials = rng.bounded(4);
    for (std::size_t k = 0; k < initials; ++k) {
      std::vector<double> v(cols);
      for (double& e : v) e = static_cast<double>(rng.uniform_int(-10, 10)) / 3.0;
      spec.initials.push_back({"s" + std::to_string(k), Vec(std::move(v))});
    }
    spec.random_initials = rng.bounded(4);
    spec.steps = 1 + rng.bounded(100);
    spec.seed = rng.bounded(2) ? rng() : 0;
    if (!(parse_chain_spec(serialize_chain_spec(spec)) == spec))
      return "spec " + std::to_string(trial) + " did not survive";
  }
  const ChainSpec ref =
      parse_chain_spec(read_file(STOCHDYN_DATA_DIR "/reference.chain"));
  if (!(ref.matrix == Matrix{{0.8, 0.1}, {0.2, 0.9}})) return "reference matrix";
  const std::vector<NamedState> expected{
      {"p", kP}, {"q", kQ}, {"r", kR}, {"s", kS}};
  if (ref.initials != expected) return "reference initial states";
  if (ref.random_initials != 2 || ref.steps != 15) return "reference settings";
  return {};
}

std::string phase_plot_reproduction() {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("stochdyn_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string a = (dir / "a.svg").string(), b = (dir / "b.svg").string();
  std::ostringstream out, err;
  const int ca = cli::run({"stochdyn", "plot", STOCHDYN_DATA_DIR "/reference.chain",
                           "--output", a}, out, err);
  const int cb = cli::run({"stochdyn", "plot", STOCHDYN_DATA_DIR "/reference.chain",
                           "--output", b}, out, err);
  const std::string svg = read_file(a), again = read_file(b);
  fs::remove_all(dir);
  if (ca != 0 || cb != 0) return "plot failed: " + err.str();
  if (svg != again) return "SVG differs between runs";
  const std::size_t lines = count(svg, "<polyline class=\"trajectory\""),
                    markers = count(svg, "<polygon class=\"marker\""),
                    eig = count(svg, "<line class=\"eigenline\""),
                    axes = count(svg, "<line class=\"axis\"");
  if (lines != 6 || markers != 96 || eig != 2 || axes != 2)
    return "counts " + std::to_string(lines) + "/" + std::to_string(markers) +
           "/" + std::to_string(eig) + "/" + std::to_string(axes);
  return {};
}

std::string convergence_of_r() {
  const Spectrum s = eigen_decompose(example_a());
  const ConvergenceReport r =
      convergence_report(s, decompose_in_eigenbasis(s, kR), 0.02);
  // Scan oracle: first k with ||x_k - [3,6]||_inf <= 0.02.
  std::vector<double> x = as_std(kR);
  std::size_t k = 0;
  while (std::max(std::abs(x[0] - 3.0), std::abs(x[1] - 6.0)) > 0.02) {
    x = oracle::multiply(kExampleRows, x);
    ++k;
  }
  if (r.steps_to_tol != 15 || k != 15)
    return "steps_to_tol " + std::to_string(r.steps_to_tol) + ", oracle " +
           std::to_string(k);
  if (std::abs(r.rate - 0.7) > 1e-12) return "rate " + std::to_string(r.rate);
  return {};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "spectrum reproduction", spectrum_reproduction},
      {2, "trajectory endpoints", trajectory_endpoints},
      {3, "closed form equals iteration", closed_form_equals_iteration},
      {4, "steady state is the oblique projection", steady_state_is_oblique},
      {5, "exact contraction by 0.7", exact_contraction},
      {6, "stationary distribution", stationary},
      {7, "monte carlo consistency", monte_carlo},
      {8, "perron property sweep", perron_sweep},
      {9, "parser round trip", parser_round_trip},
      {10, "phase plot reproduction", phase_plot_reproduction},
      {11, "convergence report for r", convergence_of_r},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    std::string reason;
    try {
      reason = c.check();
    } catch (const std::exception& e) {
      reason = std::string("exception: ") + e.what();
    }
    if (reason.empty()) {
      std::printf("[PASS] %2d %s\n", c.id, c.name);
    } else {
      ++failed;
      std::printf("[FAIL] %2d %s: %s\n", c.id, c.name, reason.c_str());
    }
  }
  std::printf("%d of %zu criteria passed\n",
              static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
