#pragma once

// Working-precision helpers shared by the spectral and dynamics sources.

#include <cstddef>
#include <vector>

#include "stochdyn/matrix.hpp"
#include "stochdyn/spectral.hpp"

namespace stochdyn::detail {

// Mutable row-major square matrix used for deflation.
struct Dense {
  std::size_t n = 0;
  std::vector<double> a;

  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

Dense to_dense(const Matrix& m);
Dense transpose(const Dense& m);
std::vector<double> matvec(const Dense& m, const std::vector<double>& x);

// (n, n+1, ..., 2n-1) normalized. Strictly positive, so it always has a
// component along the Perron vector of a stochastic matrix, and it is not a
// fixed vector of doubly-stochastic matrices.
std::vector<double> positive_start(std::size_t n);

enum class PowerStatus {
  kConverged,
  kComplexPair,   // iterates settle into a 2-D rotation
  kEqualModulus,  // two real eigenvalues +mu and -mu dominate
  kDefective,     // a repeated eigenvalue with a single eigenvector
  kExhausted,     // max_iter reached without a verdict
  kVanished,      // A v == 0 for the current iterate
};

struct PowerOutcome {
  PowerStatus status = PowerStatus::kExhausted;
  double value = 0.0;
  std::vector<double> vector;
  std::size_t iterations = 0;
  double modulus = 0.0;
};

// Power iteration from `start`. With `detect_pairs`, a two-term Krylov fit
// is checked periodically so rotating, sign-alternating or Jordan-block
// iterates stop early with kComplexPair / kEqualModulus / kDefective.
PowerOutcome power_iterate(const Dense& m, std::vector<double> start,
                           double tol, std::size_t max_iter, bool detect_pairs);

// Incremental Wielandt deflation of a stochastic matrix. Each call to next()
// yields the dominant remaining eigenpair (or, once the remainder vanishes,
// all remaining zero-eigenvalue pairs at once). Throws SpectralError with
// the extraction index on failure.
class Deflation {
 public:
  explicit Deflation(const StochasticMatrix& a);

  bool done() const noexcept { return extracted_ == original_.n; }
  std::size_t extracted() const noexcept { return extracted_; }
  std::vector<EigenPair> next();

 private:
  std::vector<EigenPair> finish_with_null_space();

  Dense original_;
  Dense current_;
  std::size_t extracted_ = 0;
  std::vector<EigenPair> found_;
};

}  // namespace stochdyn::detail
