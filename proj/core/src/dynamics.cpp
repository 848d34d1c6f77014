#include "stochdyn/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "spectral_detail.hpp"
#include "stochdyn/error.hpp"
#include "stochdyn/format.hpp"

namespace stochdyn {

namespace {

bool is_unit(double lambda) {
  return std::abs(lambda - 1.0) <= kUnitEigenvalueTolerance;
}

void require_aligned(const Spectrum& s, const EigenCoordinates& c) {
  if (c.coeffs.size() != s.size())
    throw Error(ErrorCode::kDimensionMismatch,
                "coordinates have " + std::to_string(c.coeffs.size()) +
                    " entries, spectrum has " + std::to_string(s.size()) +
                    " pairs");
}

void require_steady_state_exists(const Spectrum& s) {
  for (const EigenPair& p : s.pairs()) {
    const double m = std::abs(p.value);
    if (m > 1.0 + kUnitEigenvalueTolerance)
      throw Error(ErrorCode::kNoSteadyState,
                  "eigenvalue " + format_significant(p.value, 12) +
                      " exceeds 1 in modulus");
    if (m >= 1.0 - kUnitEigenvalueTolerance && !is_unit(p.value))
      throw Error(ErrorCode::kNoSteadyState,
                  "eigenvalue " + format_significant(p.value, 12) +
                      " has modulus 1 but is not 1; the trajectory oscillates");
  }
}

// sum over lambda = 1 modes of c_i v_i; steady_state and the oblique
// projection both go through here.
Vec unit_component(const Spectrum& s, const EigenCoordinates& c) {
  Vec out = Vec::zeros(s.source_dim());
  for (std::size_t i = 0; i < s.size(); ++i)
    if (is_unit(s[i].value)) out = out + c.coeffs[i] * s[i].vector;
  return out;
}

std::size_t unique_unit_index(const Spectrum& s) {
  std::size_t count = 0, index = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (is_unit(s[i].value)) {
      ++count;
      index = i;
    }
  }
  if (count != 1)
    throw Error(ErrorCode::kNonUniqueStationary,
                "expected exactly one eigenvalue equal to 1, found " +
                    std::to_string(count));
  return index;
}

Vec to_distribution(const Vec& v) {
  return (1.0 / sum(v)) * v;
}

[[noreturn]] void throw_periodic(const std::string& detail) {
  throw Error(ErrorCode::kPeriodicChain,
              "chain is periodic (" + detail + "); the stationary "
              "distribution is not the limit of the dynamics");
}

void check_second_eigenvalue(double lambda) {
  if (is_unit(lambda))
    throw Error(ErrorCode::kNonUniqueStationary,
                "eigenvalue 1 is repeated; every mixture of the invariant "
                "distributions is stationary");
  if (std::abs(lambda) >= 1.0 - kUnitEigenvalueTolerance)
    throw_periodic("eigenvalue " + format_significant(lambda, 12));
}

}  // namespace

Trajectory::Trajectory(std::vector<Vec> states) : states_(std::move(states)) {
  if (states_.empty())
    throw Error(ErrorCode::kInvalidArgument, "trajectory needs a state");
  for (const Vec& x : states_) {
    if (x.size() != states_.front().size())
      throw Error(ErrorCode::kDimensionMismatch,
                  "trajectory states differ in length");
  }
}

Trajectory iterate_trajectory(const StochasticMatrix& a, const Vec& x0,
                              std::size_t steps) {
  if (x0.size() != a.dim())
    throw Error(ErrorCode::kDimensionMismatch,
                "initial state has length " + std::to_string(x0.size()) +
                    ", matrix dimension is " + std::to_string(a.dim()));
  std::vector<Vec> states;
  states.reserve(steps + 1);
  states.push_back(x0);
  for (std::size_t k = 0; k < steps; ++k)
    states.push_back(mat_vec(a, states.back()));
  return Trajectory(std::move(states));
}

Vec closed_form_state(const Spectrum& s, const EigenCoordinates& c,
                      std::size_t k) {
  require_aligned(s, c);
  Vec out = Vec::zeros(s.source_dim());
  const double power = static_cast<double>(k);
  for (std::size_t i = 0; i < s.size(); ++i)
    out = out + (c.coeffs[i] * std::pow(s[i].value, power)) * s[i].vector;
  return out;
}

Vec steady_state(const Spectrum& s, const EigenCoordinates& c) {
  require_aligned(s, c);
  require_steady_state_exists(s);
  return unit_component(s, c);
}

Vec stationary_distribution(const StochasticMatrix& a) {
  const std::size_t n = a.dim();
  if (n == 1) return Vec{1.0};

  if (n == 2) {
    const Spectrum s = eigen_2x2(a);
    check_second_eigenvalue(s[1].value);
    return to_distribution(s[0].vector);
  }

  detail::Deflation deflation(a);
  EigenPair dominant{0.0, Vec{0.0}};
  try {
    dominant = deflation.next().front();
  } catch (const SpectralError& e) {
    if (e.code() == ErrorCode::kNoConvergence ||
        e.code() == ErrorCode::kComplexSpectrum)
      throw_periodic(std::string("no dominant mode: ") + e.what());
    throw;
  }
  if (!is_unit(dominant.value))
    throw Error(ErrorCode::kNoConvergence,
                "dominant eigenvalue " + format_significant(dominant.value, 12) +
                    " is not 1");

  try {
    const std::vector<EigenPair> second = deflation.next();
    check_second_eigenvalue(second.front().value);
  } catch (const SpectralError& e) {
    // A complex or +/- pair only matters when it sits on the unit circle.
    if (!e.modulus()) throw;
    if (*e.modulus() >= 1.0 - kUnitEigenvalueTolerance)
      throw_periodic("subdominant modulus " +
                     format_significant(*e.modulus(), 12));
  }
  return to_distribution(dominant.vector);
}

ConvergenceReport convergence_report(const Spectrum& s,
                                     const EigenCoordinates& c, double tol) {
  if (!(tol > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  Vec limit = steady_state(s, c);

  double rate = 0.0;
  std::vector<std::size_t> decaying;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (is_unit(s[i].value)) continue;
    rate = std::max(rate, std::abs(s[i].value));
    decaying.push_back(i);
  }

  const std::size_t n = s.source_dim();
  // weights[m] = c_i lambda_i^k for the m-th decaying mode.
  std::vector<double> weights;
  for (std::size_t i : decaying) weights.push_back(c.coeffs[i]);
  for (std::size_t k = 0; k <= kConvergenceScanCap; ++k) {
    double worst = 0.0;
    for (std::size_t row = 0; row < n; ++row) {
      double acc = 0.0;
      for (std::size_t m = 0; m < decaying.size(); ++m)
        acc += weights[m] * s[decaying[m]].vector[row];
      worst = std::max(worst, std::abs(acc));
    }
    if (worst <= tol)
      return ConvergenceReport{rate, std::move(limit), k, tol};
    for (std::size_t m = 0; m < decaying.size(); ++m)
      weights[m] *= s[decaying[m]].value;
  }
  throw Error(ErrorCode::kCapExceeded,
              "distance to the steady state stays above " +
                  format_significant(tol, 6) + " for " +
                  std::to_string(kConvergenceScanCap) + " steps");
}

Vec project_onto_dominant(const Spectrum& s, const Vec& x0,
                          ProjectionMode mode) {
  const std::size_t index = unique_unit_index(s);
  if (mode == ProjectionMode::kOblique)
    return unit_component(s, decompose_in_eigenbasis(s, x0));
  const Vec& v = s[index].vector;
  return (dot(x0, v) / dot(v, v)) * v;
}

}  // namespace stochdyn
