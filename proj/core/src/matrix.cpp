#include "stochdyn/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "stochdyn/error.hpp"
#include "stochdyn/format.hpp"

namespace stochdyn {

namespace {

void require_finite(std::span<const double> values, const char* what) {
  for (double x : values) {
    if (!std::isfinite(x))
      throw Error(ErrorCode::kNonFinite,
                  std::string(what) + " contains a non-finite entry");
  }
}

void require_same_size(const Vec& a, const Vec& b) {
  if (a.size() != b.size())
    throw Error(ErrorCode::kDimensionMismatch,
                "vector lengths differ: " + std::to_string(a.size()) + " vs " +
                    std::to_string(b.size()));
}

}  // namespace

Vec::Vec(std::vector<double> entries) : entries_(std::move(entries)) {
  if (entries_.empty())
    throw Error(ErrorCode::kInvalidArgument, "vector must be nonempty");
  require_finite(entries_, "vector");
}

Vec::Vec(std::initializer_list<double> entries)
    : Vec(std::vector<double>(entries)) {}

Vec Vec::zeros(std::size_t n) { return constant(n, 0.0); }

Vec Vec::constant(std::size_t n, double value) {
  return Vec(std::vector<double>(n, value));
}

Vec operator+(const Vec& a, const Vec& b) {
  require_same_size(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return Vec(std::move(out));
}

Vec operator-(const Vec& a, const Vec& b) {
  require_same_size(a, b);
  std::vector<double> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return Vec(std::move(out));
}

Vec operator*(double s, const Vec& v) {
  std::vector<double> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = s * v[i];
  return Vec(std::move(out));
}

double dot(const Vec& a, const Vec& b) {
  require_same_size(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double sum(const Vec& v) {
  double acc = 0.0;
  for (double x : v.entries()) acc += x;
  return acc;
}

double norm2(const Vec& v) {
  double acc = 0.0;
  for (double x : v.entries()) acc += x * x;
  return std::sqrt(acc);
}

double norm_inf(const Vec& v) {
  double out = 0.0;
  for (double x : v.entries()) out = std::max(out, std::abs(x));
  return out;
}

double distance_inf(const Vec& a, const Vec& b) {
  require_same_size(a, b);
  double out = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    out = std::max(out, std::abs(a[i] - b[i]));
  return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols,
               std::vector<double> row_major)
    : rows_(rows), cols_(cols), entries_(std::move(row_major)) {
  if (rows_ == 0 || cols_ == 0)
    throw Error(ErrorCode::kInvalidArgument, "matrix must be nonempty");
  if (entries_.size() != rows_ * cols_)
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix " + std::to_string(rows_) + "x" +
                    std::to_string(cols_) + " needs " +
                    std::to_string(rows_ * cols_) + " entries, got " +
                    std::to_string(entries_.size()));
  require_finite(entries_, "matrix");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  for (const auto& row : rows) {
    if (row.size() != cols_)
      throw Error(ErrorCode::kDimensionMismatch, "ragged matrix rows");
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  *this = Matrix(rows_, cols_, std::move(entries_));
}

Matrix Matrix::identity(std::size_t n) {
  std::vector<double> e(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) e[i * n + i] = 1.0;
  return Matrix(n, n, std::move(e));
}

Matrix Matrix::from_columns(std::span<const Vec> columns) {
  if (columns.empty())
    throw Error(ErrorCode::kInvalidArgument, "no columns given");
  const std::size_t n = columns.front().size();
  std::vector<double> e(n * columns.size());
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (columns[j].size() != n)
      throw Error(ErrorCode::kDimensionMismatch, "column lengths differ");
    for (std::size_t i = 0; i < n; ++i) e[i * columns.size() + j] = columns[j][i];
  }
  return Matrix(n, columns.size(), std::move(e));
}

Vec Matrix::column(std::size_t j) const {
  std::vector<double> out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
  return Vec(std::move(out));
}

Matrix Matrix::transposed() const {
  std::vector<double> e(entries_.size());
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) e[j * rows_ + i] = (*this)(i, j);
  return Matrix(cols_, rows_, std::move(e));
}

Vec multiply(const Matrix& m, const Vec& x) {
  if (m.cols() != x.size())
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix has " + std::to_string(m.cols()) +
                    " columns but vector has length " +
                    std::to_string(x.size()));
  std::vector<double> out(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m.cols(); ++j) acc += m(i, j) * x[j];
    out[i] = acc;
  }
  return Vec(std::move(out));
}

StochasticMatrix validate_stochastic(const Matrix& m) {
  if (!m.is_square())
    throw Error(ErrorCode::kNotSquare,
                "matrix is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected square");
  const std::size_t n = m.rows();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) < 0.0)
        throw ValidationError(ErrorCode::kNegativeEntry,
                              "entry (" + std::to_string(i) + ", " +
                                  std::to_string(j) + ") is negative: " +
                                  format_shortest(m(i, j)),
                              i, j, m(i, j));
    }
  }
  for (std::size_t j = 0; j < n; ++j) {
    double column_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) column_sum += m(i, j);
    if (std::abs(column_sum - 1.0) > kColumnSumTolerance)
      throw ValidationError(ErrorCode::kColumnSumViolation,
                            "column " + std::to_string(j) + " sums to " +
                                format_significant(column_sum, 12) +
                                ", expected 1",
                            std::nullopt, j, column_sum);
  }
  return StochasticMatrix(m);
}

Vec mat_vec(const StochasticMatrix& a, const Vec& x) {
  return multiply(a.matrix(), x);
}

Vec solve_linear(const Matrix& v, const Vec& b) {
  if (!v.is_square())
    throw Error(ErrorCode::kNotSquare, "solve_linear needs a square matrix");
  const std::size_t n = v.rows();
  if (b.size() != n)
    throw Error(ErrorCode::kDimensionMismatch,
                "right-hand side has length " + std::to_string(b.size()) +
                    ", expected " + std::to_string(n));

  std::vector<double> a(v.entries().begin(), v.entries().end());
  std::vector<double> x(b.entries().begin(), b.entries().end());
  auto at = [&](std::size_t i, std::size_t j) -> double& { return a[i * n + j]; };

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(at(i, k)) > std::abs(at(pivot, k))) pivot = i;
    if (std::abs(at(pivot, k)) < kPivotTolerance)
      throw Error(ErrorCode::kSingularMatrix,
                  "pivot " + std::to_string(k) + " has magnitude " +
                      format_significant(std::abs(at(pivot, k)), 3));
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(pivot, j));
      std::swap(x[k], x[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double factor = at(i, k) / at(k, k);
      if (factor == 0.0) continue;
      for (std::size_t j = k; j < n; ++j) at(i, j) -= factor * at(k, j);
      x[i] -= factor * x[k];
    }
  }
  for (std::size_t k = n; k-- > 0;) {
    double acc = x[k];
    for (std::size_t j = k + 1; j < n; ++j) acc -= at(k, j) * x[j];
    x[k] = acc / at(k, k);
  }
  return Vec(std::move(x));
}

}  // namespace stochdyn
