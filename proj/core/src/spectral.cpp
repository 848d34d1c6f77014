#include "stochdyn/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "spectral_detail.hpp"
#include "stochdyn/error.hpp"
#include "stochdyn/format.hpp"

namespace stochdyn {

namespace {

constexpr double kSignThreshold = 1e-12;
constexpr double kDiscriminantTolerance = 1e-12;
constexpr double kRepeatedTolerance = 1e-10;
constexpr double kIndependenceTolerance = 1e-8;

// Deflation-internal iteration budget. Refinement by inverse iteration
// tightens the result, so the power-iteration tolerance can stay loose.
constexpr double kDeflationPowerTol = 1e-10;
constexpr std::size_t kDeflationMaxIter = 100000;
constexpr std::size_t kPairCheckInterval = 25;
constexpr double kVanishingNorm = 1e-12;

using detail::Dense;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(const std::vector<double>& v) { return std::sqrt(dot(v, v)); }

void scale(std::vector<double>& v, double s) {
  for (double& x : v) x *= s;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b,
                    double sign) {
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    out = std::max(out, std::abs(a[i] - sign * b[i]));
  return out;
}

double frobenius(const Dense& m) { return norm2(m.a); }

double rayleigh(const Dense& m, const std::vector<double>& v) {
  return dot(v, detail::matvec(m, v)) / dot(v, v);
}

// One or more steps of shifted inverse iteration. Near-zero pivots are
// replaced by a tiny value: the shift sits on an eigenvalue by design.
std::vector<double> inverse_iterate(const Dense& m, double shift,
                                    std::vector<double> v, int steps) {
  const std::size_t n = m.n;
  Dense lu = m;
  for (std::size_t i = 0; i < n; ++i) lu(i, i) -= shift;
  const double floor =
      std::numeric_limits<double>::epsilon() * std::max(1.0, frobenius(m));
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu(k, j), lu(p, j));
      std::swap(perm[k], perm[p]);
    }
    if (std::abs(lu(k, k)) < floor) lu(k, k) = lu(k, k) < 0.0 ? -floor : floor;
    for (std::size_t i = k + 1; i < n; ++i) {
      lu(i, k) /= lu(k, k);
      for (std::size_t j = k + 1; j < n; ++j) lu(i, j) -= lu(i, k) * lu(k, j);
    }
  }
  for (int step = 0; step < steps; ++step) {
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = v[perm[i]];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
      x[i] /= lu(i, i);
    }
    const double norm = norm2(x);
    if (!std::isfinite(norm) || norm == 0.0) break;
    scale(x, 1.0 / norm);
    v = std::move(x);
  }
  return v;
}

// Orthonormal basis of {x : M x = 0} from the reduced row echelon form.
std::vector<std::vector<double>> null_space(const Dense& m, double tol) {
  const std::size_t n = m.n;
  Dense r = m;
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t p = row;
    for (std::size_t i = row + 1; i < n; ++i)
      if (std::abs(r(i, col)) > std::abs(r(p, col))) p = i;
    if (std::abs(r(p, col)) <= tol) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(r(row, j), r(p, j));
    const double pivot = r(row, col);
    for (std::size_t j = 0; j < n; ++j) r(row, j) /= pivot;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row || r(i, col) == 0.0) continue;
      const double f = r(i, col);
      for (std::size_t j = 0; j < n; ++j) r(i, j) -= f * r(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<std::vector<double>> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (std::find(pivot_cols.begin(), pivot_cols.end(), free) !=
        pivot_cols.end())
      continue;
    std::vector<double> x(n, 0.0);
    x[free] = 1.0;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k)
      x[pivot_cols[k]] = -r(k, free);
    basis.push_back(std::move(x));
  }
  return basis;
}

// Removes from v its components along the (orthonormal) vectors in `basis`.
void project_out(std::vector<double>& v,
                 const std::vector<std::vector<double>>& basis) {
  for (const auto& b : basis) {
    const double c = dot(v, b);
    for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * b[i];
  }
}

std::vector<double> to_std(const Vec& v) {
  return {v.entries().begin(), v.entries().end()};
}

void sort_pairs(std::vector<EigenPair>& pairs) {
  // Keys are rounded so round-off does not reorder genuine ties.
  auto key = [](double x) { return std::llround(x * 1e12); };
  std::stable_sort(pairs.begin(), pairs.end(),
                   [&](const EigenPair& a, const EigenPair& b) {
                     const auto ma = key(std::abs(a.value));
                     const auto mb = key(std::abs(b.value));
                     if (ma != mb) return ma > mb;
                     return key(a.value) > key(b.value);
                   });
}

std::string extraction_label(std::size_t index) {
  return "eigenpair " + std::to_string(index + 1);
}

}  // namespace

namespace detail {

Dense to_dense(const Matrix& m) {
  return Dense{m.rows(), {m.entries().begin(), m.entries().end()}};
}

Dense transpose(const Dense& m) {
  Dense t{m.n, std::vector<double>(m.a.size())};
  for (std::size_t i = 0; i < m.n; ++i)
    for (std::size_t j = 0; j < m.n; ++j) t(j, i) = m(i, j);
  return t;
}

std::vector<double> matvec(const Dense& m, const std::vector<double>& x) {
  std::vector<double> y(m.n, 0.0);
  for (std::size_t i = 0; i < m.n; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m.n; ++j) acc += m(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

std::vector<double> positive_start(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(n + i);
  scale(v, 1.0 / norm2(v));
  return v;
}

PowerOutcome power_iterate(const Dense& m, std::vector<double> start,
                           double tol, std::size_t max_iter,
                           bool detect_pairs) {
  PowerOutcome out;
  std::vector<double> v = std::move(start);
  scale(v, 1.0 / norm2(v));
  for (std::size_t it = 1; it <= max_iter; ++it) {
    std::vector<double> y = matvec(m, v);
    const double norm = norm2(y);
    out.iterations = it;
    if (norm <= kVanishingNorm) {
      out.status = PowerStatus::kVanished;
      out.vector = std::move(v);
      return out;
    }
    scale(y, 1.0 / norm);
    const double diff =
        std::min(max_abs_diff(y, v, 1.0), max_abs_diff(y, v, -1.0));
    v = std::move(y);
    if (diff <= tol) {
      out.status = PowerStatus::kConverged;
      out.value = rayleigh(m, v);
      out.vector = std::move(v);
      return out;
    }
    if (!detect_pairs || it % kPairCheckInterval != 0) continue;

    // Fit y2 = alpha y1 + beta v over the last two applications. A good fit
    // means the iterate lives in a 2-D invariant subspace with eigenvalues
    // solving z^2 - alpha z - beta = 0.
    const std::vector<double> y1 = matvec(m, v);
    const std::vector<double> y2 = matvec(m, y1);
    const double g11 = dot(y1, y1), g12 = dot(y1, v), g22 = dot(v, v);
    const double det = g11 * g22 - g12 * g12;
    // Nearly parallel iterates make the fit meaningless: that is plain
    // convergence still in progress.
    if (det <= 1e-10 * g11 * g22) continue;
    const double r1 = dot(y1, y2), r2 = dot(v, y2);
    const double alpha = (r1 * g22 - g12 * r2) / det;
    const double beta = (g11 * r2 - g12 * r1) / det;
    std::vector<double> resid = y2;
    for (std::size_t i = 0; i < resid.size(); ++i)
      resid[i] -= alpha * y1[i] + beta * v[i];
    if (norm2(resid) > 1e-9 * std::max(norm2(y2), 1e-300)) continue;
    const double disc = alpha * alpha + 4.0 * beta;
    const double size = std::max(alpha * alpha, std::abs(4.0 * beta));
    if (disc < -1e-10 * size) {
      out.status = PowerStatus::kComplexPair;
      out.modulus = std::sqrt(-beta);
      out.vector = std::move(v);
      return out;
    }
    if (std::abs(disc) <= 1e-10 * size) {
      // Iterates keep turning inside a 2-D subspace with a double root.
      out.status = PowerStatus::kDefective;
      out.value = alpha / 2.0;
      out.vector = std::move(v);
      return out;
    }
    const double root = std::sqrt(std::max(disc, 0.0)) / 2.0;
    if (std::abs(alpha) <= 1e-9 * root) {
      out.status = PowerStatus::kEqualModulus;
      out.modulus = root;
      out.vector = std::move(v);
      return out;
    }
  }
  out.status = PowerStatus::kExhausted;
  out.vector = std::move(v);
  return out;
}

Deflation::Deflation(const StochasticMatrix& a)
    : original_(to_dense(a.matrix())), current_(original_) {}

std::vector<EigenPair> Deflation::next() {
  const std::size_t n = original_.n;
  const std::size_t index = extracted_;
  if (frobenius(current_) <= 1e-11) return finish_with_null_space();

  // A deflated remainder can annihilate a particular start while still
  // having nonzero eigenvalues, so fall back to other starts before
  // concluding that only zero eigenvalues remain.
  std::vector<std::vector<double>> starts{positive_start(n)};
  starts.push_back(starts.front());
  for (std::size_t i = 1; i < n; i += 2) starts.back()[i] = -starts.back()[i];
  for (std::size_t j = 0; j < n; ++j) {
    starts.emplace_back(n, 0.0);
    starts.back()[j] = 1.0;
  }
  PowerOutcome out;
  out.status = PowerStatus::kVanished;
  for (std::vector<double>& start : starts) {
    out = power_iterate(current_, std::move(start), kDeflationPowerTol,
                        kDeflationMaxIter, true);
    if (out.status != PowerStatus::kVanished) break;
  }
  if (out.status == PowerStatus::kVanished) return finish_with_null_space();
  switch (out.status) {
    case PowerStatus::kConverged:
    case PowerStatus::kVanished:
      break;
    case PowerStatus::kComplexPair:
      throw SpectralError(ErrorCode::kComplexSpectrum,
                          extraction_label(index) +
                              ": complex conjugate pair with modulus " +
                              format_significant(out.modulus, 12),
                          index, out.iterations, out.modulus);
    case PowerStatus::kEqualModulus:
      throw SpectralError(ErrorCode::kNoConvergence,
                          extraction_label(index) +
                              ": eigenvalues +/-" +
                              format_significant(out.modulus, 12) +
                              " share the dominant modulus",
                          index, out.iterations, out.modulus);
    case PowerStatus::kDefective:
      throw SpectralError(ErrorCode::kDefectiveMatrix,
                          extraction_label(index) + ": eigenvalue " +
                              format_significant(out.value, 12) +
                              " is repeated without a full eigenspace",
                          index, out.iterations);
    case PowerStatus::kExhausted:
      throw SpectralError(ErrorCode::kNoConvergence,
                          extraction_label(index) + ": no convergence after " +
                              std::to_string(out.iterations) + " iterations",
                          index, out.iterations);
  }

  std::vector<double> v = inverse_iterate(original_, out.value, out.vector, 2);
  const double lambda = rayleigh(original_, v);

  if (n - index > 1) {
    std::vector<double> w;
    if (index == 0 && std::abs(lambda - 1.0) <= kUnitEigenvalueTolerance) {
      w.assign(n, 1.0 / std::sqrt(static_cast<double>(n)));
    } else {
      w = inverse_iterate(transpose(current_), lambda, positive_start(n), 3);
    }
    const double wv = dot(w, v) / (norm2(w) * norm2(v));
    if (std::abs(wv) < kDeflationTolerance)
      throw SpectralError(ErrorCode::kDefectiveMatrix,
                          extraction_label(index) +
                              ": left and right eigenvectors for lambda = " +
                              format_significant(lambda, 12) +
                              " are orthogonal",
                          index);
    const double denom = dot(w, v);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        current_(i, j) -= lambda * v[i] * w[j] / denom;
  }

  EigenPair pair{lambda, normalize_eigenvector(Vec(std::move(v)))};
  found_.push_back(pair);
  ++extracted_;
  return {std::move(pair)};
}

std::vector<EigenPair> Deflation::finish_with_null_space() {
  const std::size_t n = original_.n;
  const std::size_t remaining = n - extracted_;

  // Everything left has eigenvalue 0: take kernel vectors of A that are
  // independent of the zero-eigenvalue pairs already found.
  std::vector<std::vector<double>> taken;
  auto accept = [&](std::vector<double> v) {
    project_out(v, taken);
    const double norm = norm2(v);
    if (norm <= kIndependenceTolerance) return false;
    scale(v, 1.0 / norm);
    taken.push_back(std::move(v));
    return true;
  };
  for (const EigenPair& p : found_)
    if (std::abs(p.value) <= kResidualTolerance) accept(to_std(p.vector));
  const std::size_t already = taken.size();

  std::vector<std::vector<double>> kernel = null_space(original_, 1e-10);
  // Orthonormalize before projecting so the fresh vectors stay well spread.
  std::vector<std::vector<double>> ortho;
  for (auto& k : kernel) {
    project_out(k, ortho);
    const double norm = norm2(k);
    if (norm > kIndependenceTolerance) {
      scale(k, 1.0 / norm);
      ortho.push_back(k);
    }
  }
  std::vector<EigenPair> out;
  for (auto& k : ortho) {
    if (out.size() == remaining) break;
    if (accept(k))
      out.push_back(EigenPair{0.0, normalize_eigenvector(Vec(taken.back()))});
  }
  if (out.size() < remaining || taken.size() - already < remaining)
    throw SpectralError(ErrorCode::kDefectiveMatrix,
                        extraction_label(extracted_) +
                            ": eigenvalue 0 lacks independent eigenvectors",
                        extracted_);
  extracted_ = n;
  found_.insert(found_.end(), out.begin(), out.end());
  return out;
}

}  // namespace detail

Spectrum::Spectrum(std::vector<EigenPair> pairs, std::size_t source_dim)
    : pairs_(std::move(pairs)), source_dim_(source_dim) {
  if (pairs_.size() != source_dim_)
    throw Error(ErrorCode::kDimensionMismatch,
                "spectrum of a " + std::to_string(source_dim_) +
                    "-dimensional matrix needs " + std::to_string(source_dim_) +
                    " pairs, got " + std::to_string(pairs_.size()));
  for (const EigenPair& p : pairs_) {
    if (p.vector.size() != source_dim_)
      throw Error(ErrorCode::kDimensionMismatch,
                  "eigenvector length differs from the source dimension");
  }
}

Matrix Spectrum::eigenvector_matrix() const {
  std::vector<Vec> columns;
  columns.reserve(pairs_.size());
  for (const EigenPair& p : pairs_) columns.push_back(p.vector);
  return Matrix::from_columns(columns);
}

Vec normalize_eigenvector(const Vec& v) {
  const double norm = stochdyn::norm2(v);
  if (norm == 0.0)
    throw Error(ErrorCode::kInvalidArgument, "cannot normalize a zero vector");
  double sign = 1.0;
  for (double x : v.entries()) {
    if (std::abs(x) / norm > kSignThreshold) {
      sign = x < 0.0 ? -1.0 : 1.0;
      break;
    }
  }
  return (sign / norm) * v;
}

double eigen_residual(const Matrix& a, const EigenPair& pair) {
  return norm_inf(multiply(a, pair.vector) - pair.value * pair.vector);
}

Spectrum eigen_2x2(const StochasticMatrix& a) {
  if (a.dim() != 2)
    throw Error(ErrorCode::kDimensionMismatch,
                "eigen_2x2 needs a 2x2 matrix, got dimension " +
                    std::to_string(a.dim()));
  const double p = a(0, 0), q = a(0, 1), r = a(1, 0), s = a(1, 1);
  const double trace = p + s;
  const double det = p * s - q * r;
  // t^2 - 4 det rewritten without the cancellation-prone subtraction.
  const double disc = (p - s) * (p - s) + 4.0 * q * r;

  if (disc < -kDiscriminantTolerance)
    throw SpectralError(ErrorCode::kComplexSpectrum,
                        "characteristic discriminant " +
                            format_significant(disc, 6) + " is negative",
                        0);

  if (std::abs(disc) <= kDiscriminantTolerance) {
    const double lambda = trace / 2.0;
    const double off = std::max({std::abs(p - lambda), std::abs(q),
                                 std::abs(r), std::abs(s - lambda)});
    if (off > kDiscriminantTolerance)
      throw SpectralError(ErrorCode::kDefectiveMatrix,
                          "repeated eigenvalue " +
                              format_significant(lambda, 12) +
                              " has a one-dimensional eigenspace",
                          1);
    return Spectrum({EigenPair{lambda, Vec{1.0, 0.0}},
                     EigenPair{lambda, Vec{0.0, 1.0}}},
                    2);
  }

  const double root = std::sqrt(disc);
  const double big = trace >= 0.0 ? (trace + root) / 2.0 : (trace - root) / 2.0;
  const double small = det / big;

  auto nullspace_vector = [&](double lambda) {
    // Either row of A - lambda I gives a perpendicular; keep the larger one.
    const Vec from_top{q, -(p - lambda)};
    const Vec from_bottom{s - lambda, -r};
    return normalize_eigenvector(stochdyn::norm2(from_top) >=
                                         stochdyn::norm2(from_bottom)
                                     ? from_top
                                     : from_bottom);
  };

  std::vector<EigenPair> pairs{{big, nullspace_vector(big)},
                               {small, nullspace_vector(small)}};
  sort_pairs(pairs);
  return Spectrum(std::move(pairs), 2);
}

EigenPair power_iteration(const StochasticMatrix& a, double tol,
                          std::size_t max_iter) {
  if (!(tol > 0.0))
    throw Error(ErrorCode::kInvalidArgument, "tolerance must be positive");
  if (max_iter < 1)
    throw Error(ErrorCode::kInvalidArgument, "max_iter must be at least 1");
  const detail::Dense m = detail::to_dense(a.matrix());
  detail::PowerOutcome out = detail::power_iterate(
      m, detail::positive_start(a.dim()), tol, max_iter, false);
  if (out.status != detail::PowerStatus::kConverged)
    throw SpectralError(ErrorCode::kNoConvergence,
                        "power iteration did not converge within " +
                            std::to_string(max_iter) + " iterations",
                        0, max_iter);
  return EigenPair{out.value, normalize_eigenvector(Vec(std::move(out.vector)))};
}

Spectrum deflation_spectrum(const StochasticMatrix& a) {
  const std::size_t n = a.dim();
  detail::Deflation deflation(a);
  std::vector<EigenPair> pairs;
  while (!deflation.done()) {
    for (EigenPair& p : deflation.next()) pairs.push_back(std::move(p));
  }
  sort_pairs(pairs);

  // One Gram-Schmidt pass inside each group of repeated eigenvalues.
  for (std::size_t i = 1; i < pairs.size(); ++i) {
    std::vector<double> v = to_std(pairs[i].vector);
    bool touched = false;
    for (std::size_t j = 0; j < i; ++j) {
      if (std::abs(pairs[i].value - pairs[j].value) > kRepeatedTolerance)
        continue;
      const std::vector<double> u = to_std(pairs[j].vector);
      const double c = dot(v, u);
      for (std::size_t k = 0; k < n; ++k) v[k] -= c * u[k];
      touched = true;
    }
    if (!touched) continue;
    if (norm2(v) <= kIndependenceTolerance)
      throw SpectralError(ErrorCode::kDefectiveMatrix,
                          extraction_label(i) +
                              ": repeated eigenvalue without independent "
                              "eigenvectors",
                          i);
    pairs[i].vector = normalize_eigenvector(Vec(std::move(v)));
  }

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const double residual = eigen_residual(a.matrix(), pairs[i]);
    if (!(residual <= kResidualTolerance))
      throw SpectralError(ErrorCode::kNoConvergence,
                          extraction_label(i) + ": residual " +
                              format_significant(residual, 3) +
                              " exceeds tolerance",
                          i);
  }

  Spectrum spectrum(std::move(pairs), n);
  try {
    (void)solve_linear(spectrum.eigenvector_matrix(), Vec::constant(n, 1.0));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kSingularMatrix) throw;
    throw SpectralError(ErrorCode::kDefectiveMatrix,
                        "eigenvectors are not linearly independent", n - 1);
  }
  return spectrum;
}

Spectrum eigen_decompose(const StochasticMatrix& a) {
  return a.dim() == 2 ? eigen_2x2(a) : deflation_spectrum(a);
}

EigenCoordinates decompose_in_eigenbasis(const Spectrum& s, const Vec& x0) {
  if (x0.size() != s.source_dim())
    throw Error(ErrorCode::kDimensionMismatch,
                "initial state has length " + std::to_string(x0.size()) +
                    ", spectrum dimension is " +
                    std::to_string(s.source_dim()));
  const Vec c = solve_linear(s.eigenvector_matrix(), x0);
  return EigenCoordinates{{c.entries().begin(), c.entries().end()}};
}

}  // namespace stochdyn
