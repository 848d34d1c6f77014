#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <future>
#include <optional>
#include <set>
#include <sstream>
#include <utility>

#include "stochdyn/chain_spec.hpp"
#include "stochdyn/dynamics.hpp"
#include "stochdyn/error.hpp"
#include "stochdyn/format.hpp"
#include "stochdyn/montecarlo.hpp"
#include "stochdyn/spectral.hpp"
#include "stochdyn/trajectory_io.hpp"

namespace stochdyn::cli {

namespace {

constexpr int kDigits = 12;
constexpr double kDefaultTol = 0.02;
constexpr std::size_t kDefaultWalkSteps = 100000;

// Carries an exit code out of a command.
struct Failure {
  int code;
  std::string message;
};

std::string values(std::span<const double> v) {
  return join_significant(v, kDigits);
}

std::string values(const Vec& v) { return values(v.entries()); }

std::string describe(const Error& e) {
  return std::string(to_string(e.code())) + ": " + e.what();
}

ChainSpec load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kExitInput, "cannot read '" + path + "'"};
  std::ostringstream text;
  text << in.rdbuf();
  if (in.bad()) throw Failure{kExitInput, "cannot read '" + path + "'"};
  try {
    return parse_chain_spec(text.str());
  } catch (const Error& e) {
    throw Failure{kExitInput, path + ": " + describe(e)};
  }
}

StochasticMatrix load_matrix(const ChainSpec& spec, const std::string& path) {
  try {
    return validate_spec_matrix(spec);
  } catch (const Error& e) {
    throw Failure{kExitAnalysis, path + ": " + describe(e)};
  }
}

Spectrum decompose(const StochasticMatrix& a) {
  try {
    return eigen_decompose(a);
  } catch (const Error& e) {
    throw Failure{kExitAnalysis, "eigendecomposition failed: " + describe(e)};
  }
}

// Named initial states followed by the seeded random ones.
std::vector<NamedState> all_initials(const ChainSpec& spec) {
  std::vector<NamedState> out = spec.initials;
  std::set<std::string> taken;
  for (const NamedState& s : out) taken.insert(s.name);
  const std::vector<Vec> random = random_initial_states(
      spec.random_initials, spec.matrix.cols(), spec.seed);
  for (std::size_t i = 0; i < random.size(); ++i) {
    std::string name = "random_" + std::to_string(i + 1);
    while (taken.contains(name)) name += '_';
    taken.insert(name);
    out.push_back(NamedState{std::move(name), random[i]});
  }
  return out;
}

TrajectorySet simulate(const StochasticMatrix& a, const ChainSpec& spec,
                       std::size_t steps) {
  const std::vector<NamedState> initials = all_initials(spec);
  if (initials.empty())
    throw Failure{kExitInput, "spec declares no initial states"};
  std::vector<LabeledTrajectory> items;
  for (const NamedState& s : initials)
    items.push_back(LabeledTrajectory{s.name, iterate_trajectory(a, s.vector, steps)});
  return TrajectorySet(std::move(items));
}

// Writes to a sibling temporary and renames, so a failed run never leaves
// a partial file at `path`.
void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path temp = target;
  temp += ".partial";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure{kExitWrite, "cannot write '" + path + "'"};
    out << content;
    out.flush();
    if (!out) {
      std::error_code ignored;
      fs::remove(temp, ignored);
      throw Failure{kExitWrite, "cannot write '" + path + "'"};
    }
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    std::error_code ignored;
    fs::remove(temp, ignored);
    throw Failure{kExitWrite, "cannot write '" + path + "': " + ec.message()};
  }
}

int cmd_analyze(const std::string& path, double tol, std::ostream& out,
                std::ostream& err) {
  const ChainSpec spec = load_spec(path);
  const StochasticMatrix a = load_matrix(spec, path);
  const Spectrum spectrum = decompose(a);
  const std::size_t n = a.dim();
  int status = kExitOk;

  out << "dimension = " << n << '\n';
  for (std::size_t i = 0; i < n; ++i)
    out << "matrix.row_" << i + 1 << " = "
        << values(a.matrix().entries().subspan(i * n, n)) << '\n';
  for (std::size_t i = 0; i < spectrum.size(); ++i)
    out << "lambda_" << i + 1 << " = "
        << format_significant(spectrum[i].value, kDigits) << '\n';
  for (std::size_t i = 0; i < spectrum.size(); ++i)
    out << "v_" << i + 1 << " = " << values(spectrum[i].vector) << '\n';
  try {
    out << "stationary = " << values(stationary_distribution(a)) << '\n';
  } catch (const Error& e) {
    out << "stationary = error: " << describe(e) << '\n';
    err << "stationary distribution: " << describe(e) << '\n';
    status = kExitAnalysis;
  }
  out << "tol = " << format_significant(tol, kDigits) << '\n';

  for (const NamedState& s : all_initials(spec)) {
    const std::string key = "initial." + s.name;
    out << key << " = " << values(s.vector) << '\n';
    try {
      const EigenCoordinates c = decompose_in_eigenbasis(spectrum, s.vector);
      out << key << ".coefficients = " << values(c.coeffs) << '\n';
      const ConvergenceReport report = convergence_report(spectrum, c, tol);
      out << key << ".steady_state = " << values(report.steady_state) << '\n';
      out << key << ".rate = " << format_significant(report.rate, kDigits)
          << '\n';
      out << key << ".steps_to_tol = " << report.steps_to_tol << '\n';
    } catch (const Error& e) {
      out << key << ".error = " << describe(e) << '\n';
      err << "initial state '" << s.name << "': " << describe(e) << '\n';
      status = kExitAnalysis;
    }
  }
  return status;
}

int cmd_simulate(const std::string& path, std::optional<std::size_t> steps,
                 const std::string& output) {
  const ChainSpec spec = load_spec(path);
  const StochasticMatrix a = load_matrix(spec, path);
  const TrajectorySet set = simulate(a, spec, steps.value_or(spec.steps));
  write_atomically(output, write_trajectory_csv(set));
  return kExitOk;
}

int cmd_plot(const std::string& path, const std::string& output) {
  const ChainSpec spec = load_spec(path);
  const StochasticMatrix a = load_matrix(spec, path);
  if (a.dim() != 2)
    throw Failure{kExitNotPlottable,
                  "plot needs a 2-state chain, got " + std::to_string(a.dim()) +
                      " states"};
  const Spectrum spectrum = decompose(a);
  const TrajectorySet set = simulate(a, spec, spec.steps);
  write_atomically(output, render_svg(set, spectrum));
  return kExitOk;
}

int cmd_sample(const std::string& path, std::size_t walks, std::size_t steps,
               std::optional<std::uint64_t> seed, std::ostream& out,
               std::ostream& err) {
  const ChainSpec spec = load_spec(path);
  const StochasticMatrix a = load_matrix(spec, path);
  const std::uint64_t base_seed = seed.value_or(spec.seed);
  const std::size_t burn_in = steps / 100;

  std::vector<std::future<Vec>> pending;
  for (std::size_t i = 0; i < walks; ++i) {
    pending.push_back(std::async(std::launch::async, [&a, steps, burn_in,
                                                      s = base_seed + i] {
      return empirical_distribution(sample_walk(a, 0, steps, s), burn_in,
                                    a.dim());
    }));
  }
  std::vector<Vec> empirical;
  for (auto& f : pending) empirical.push_back(f.get());

  out << "walks = " << walks << '\n';
  out << "steps = " << steps << '\n';
  out << "burn_in = " << burn_in << '\n';
  for (std::size_t i = 0; i < walks; ++i) {
    out << "walk_" << i + 1 << ".seed = " << base_seed + i << '\n';
    out << "walk_" << i + 1 << ".empirical = " << values(empirical[i]) << '\n';
  }

  std::optional<Vec> stationary;
  try {
    stationary = stationary_distribution(a);
  } catch (const Error& e) {
    out << "stationary = error: " << describe(e) << '\n';
    err << "stationary distribution: " << describe(e) << '\n';
    return kExitAnalysis;
  }
  out << "stationary = " << values(*stationary) << '\n';
  double worst = 0.0;
  for (std::size_t i = 0; i < walks; ++i) {
    const double d = distance_inf(empirical[i], *stationary);
    worst = std::max(worst, d);
    out << "walk_" << i + 1 << ".distance = " << format_significant(d, kDigits)
        << '\n';
  }
  out << "max_distance = " << format_significant(worst, kDigits) << '\n';
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Analyze discrete linear dynamics x_{k+1} = A x_k of "
               "column-stochastic matrices"};
  app.name(args.empty() ? "stochdyn" : args.front());
  app.require_subcommand(1);

  std::string spec_path;
  std::string output;
  double tol = kDefaultTol;
  std::optional<std::size_t> sim_steps;
  std::size_t walks = 1;
  std::size_t walk_steps = kDefaultWalkSteps;
  std::optional<std::uint64_t> seed;

  auto* analyze = app.add_subcommand("analyze", "Spectrum, steady states and convergence report");
  analyze->add_option("spec", spec_path, "Chain spec file")->required();
  analyze->add_option("--tol", tol, "Convergence threshold (inf-norm)")
      ->check(CLI::PositiveNumber);

  auto* simulate_cmd = app.add_subcommand("simulate", "Write trajectories as CSV");
  simulate_cmd->add_option("spec", spec_path, "Chain spec file")->required();
  simulate_cmd->add_option("--steps", sim_steps, "Override the spec's step count");
  simulate_cmd->add_option("--output,-o", output, "CSV output path")->required();

  auto* plot = app.add_subcommand("plot", "Write a phase plot as SVG");
  plot->add_option("spec", spec_path, "Chain spec file")->required();
  plot->add_option("--output,-o", output, "SVG output path")->required();

  auto* sample = app.add_subcommand("sample", "Monte Carlo check of the stationary distribution");
  sample->add_option("spec", spec_path, "Chain spec file")->required();
  sample->add_option("--walks", walks, "Number of independent walks")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1} << 20));
  sample->add_option("--steps", walk_steps, "Transitions per walk");
  sample->add_option("--seed", seed, "Base seed (walk i uses seed + i)");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("stochdyn");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (analyze->parsed()) return cmd_analyze(spec_path, tol, out, err);
    if (simulate_cmd->parsed()) return cmd_simulate(spec_path, sim_steps, output);
    if (plot->parsed()) return cmd_plot(spec_path, output);
    if (sample->parsed())
      return cmd_sample(spec_path, walks, walk_steps, seed, out, err);
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const Error& e) {
    err << "error: " << describe(e) << '\n';
    return kExitAnalysis;
  }
  return kExitUsage;
}

}  // namespace stochdyn::cli
