#pragma once

#include <cstddef>
#include <vector>

#include "stochdyn/matrix.hpp"

namespace stochdyn {

// Tolerance used to decide that an eigenvalue "is" 1 (or has modulus 1).
inline constexpr double kUnitEigenvalueTolerance = 1e-9;
// ||A v - lambda v||_inf bound every returned eigenpair satisfies.
inline constexpr double kResidualTolerance = 1e-10;
// |w^T v| below this (unit left/right vectors) means the deflation step
// cannot separate the eigenvalue.
inline constexpr double kDeflationTolerance = 1e-10;

struct EigenPair {
  double value;
  Vec vector;

  friend bool operator==(const EigenPair&, const EigenPair&) = default;
};

// Full real eigendecomposition: one pair per dimension. Pairs produced by
// the decomposition routines are ordered by descending |lambda|, ties by
// descending lambda, then discovery order. Spectra built by hand keep the
// order they are given in and may use unnormalized vectors.
class Spectrum {
 public:
  Spectrum(std::vector<EigenPair> pairs, std::size_t source_dim);

  const std::vector<EigenPair>& pairs() const noexcept { return pairs_; }
  const EigenPair& operator[](std::size_t i) const { return pairs_[i]; }
  std::size_t size() const noexcept { return pairs_.size(); }
  std::size_t source_dim() const noexcept { return source_dim_; }

  // V with the eigenvectors as columns, in spectrum order.
  Matrix eigenvector_matrix() const;

 private:
  std::vector<EigenPair> pairs_;
  std::size_t source_dim_;
};

// Coefficients c_i with x0 = sum_i c_i v_i, aligned with a Spectrum.
struct EigenCoordinates {
  std::vector<double> coeffs;

  friend bool operator==(const EigenCoordinates&,
                         const EigenCoordinates&) = default;
};

// Scales v to unit Euclidean norm with its first nonzero coordinate
// positive.
Vec normalize_eigenvector(const Vec& v);

// ||A v - lambda v||_inf
double eigen_residual(const Matrix& a, const EigenPair& pair);

// Closed-form 2x2 solver: stable quadratic roots and nullspace vectors.
// Throws ComplexSpectrum or DefectiveMatrix.
Spectrum eigen_2x2(const StochasticMatrix& a);

// Dominant eigenpair by plain power iteration from a fixed positive start
// vector. Converges when successive iterates (or their sign flip, for
// negative lambda) differ by at most `tol` in the inf-norm; lambda is the
// Rayleigh quotient. Throws NoConvergence after `max_iter` steps.
EigenPair power_iteration(const StochasticMatrix& a, double tol,
                          std::size_t max_iter);

// Repeated power iteration with Wielandt deflation, for any dimension.
// Every pair is checked against the original matrix.
Spectrum deflation_spectrum(const StochasticMatrix& a);

// eigen_2x2 for n = 2, deflation_spectrum otherwise.
Spectrum eigen_decompose(const StochasticMatrix& a);

// Solves V c = x0. Throws SingularMatrix or DimensionMismatch.
EigenCoordinates decompose_in_eigenbasis(const Spectrum& s, const Vec& x0);

}  // namespace stochdyn
