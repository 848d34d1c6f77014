#pragma once

#include <cstddef>
#include <vector>

#include "stochdyn/matrix.hpp"
#include "stochdyn/spectral.hpp"

namespace stochdyn {

// Upper bound on the steps_to_tol scan in convergence_report.
inline constexpr std::size_t kConvergenceScanCap = 1'000'000;

// States x_0 .. x_K of x_{k+1} = A x_k, all of the same length.
class Trajectory {
 public:
  explicit Trajectory(std::vector<Vec> states);

  const std::vector<Vec>& states() const noexcept { return states_; }
  const Vec& operator[](std::size_t k) const { return states_[k]; }
  // Number of stored states (steps + 1).
  std::size_t size() const noexcept { return states_.size(); }
  std::size_t steps() const noexcept { return states_.size() - 1; }
  std::size_t matrix_dim() const noexcept { return states_.front().size(); }

  friend bool operator==(const Trajectory&, const Trajectory&) = default;

 private:
  std::vector<Vec> states_;
};

struct ConvergenceReport {
  double rate;         // largest |lambda| among non-unit modes
  Vec steady_state;    // x*
  std::size_t steps_to_tol;  // smallest k with ||x_k - x*||_inf <= tol
  double tol;
};

enum class ProjectionMode {
  kOblique,     // along the other eigenvectors: the actual limit of x_k
  kOrthogonal,  // Euclidean projection onto span(v_1)
};

// [x0, A x0, ..., A^steps x0] by repeated mat_vec.
Trajectory iterate_trajectory(const StochasticMatrix& a, const Vec& x0,
                              std::size_t steps);

// sum_i c_i lambda_i^k v_i
Vec closed_form_state(const Spectrum& s, const EigenCoordinates& c,
                      std::size_t k);

// Sum of c_i v_i over the lambda = 1 modes. Throws NoSteadyState when a
// mode with |lambda| >= 1 - 1e-9 is not lambda = 1 (or |lambda| > 1).
Vec steady_state(const Spectrum& s, const EigenCoordinates& c);

// The lambda = 1 eigenvector scaled to sum to 1. Throws NonUniqueStationary
// or PeriodicChain.
Vec stationary_distribution(const StochasticMatrix& a);

// Throws NoSteadyState, CapExceeded, InvalidArgument (tol <= 0).
ConvergenceReport convergence_report(const Spectrum& s,
                                     const EigenCoordinates& c, double tol);

// Projection of x0 onto the unique lambda = 1 eigenspace. Throws
// NonUniqueStationary when there is no such unique pair.
Vec project_onto_dominant(const Spectrum& s, const Vec& x0,
                          ProjectionMode mode);

}  // namespace stochdyn
