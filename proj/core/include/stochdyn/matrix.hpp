#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace stochdyn {

// Column-stochastic validation tolerance on |column sum - 1|.
inline constexpr double kColumnSumTolerance = 1e-9;
// solve_linear reports SingularMatrix below this pivot magnitude.
inline constexpr double kPivotTolerance = 1e-12;

// A nonempty real vector with finite entries.
class Vec {
 public:
  explicit Vec(std::vector<double> entries);
  Vec(std::initializer_list<double> entries);

  static Vec zeros(std::size_t n);
  static Vec constant(std::size_t n, double value);

  std::size_t size() const noexcept { return entries_.size(); }
  double operator[](std::size_t i) const { return entries_[i]; }
  std::span<const double> entries() const noexcept { return entries_; }

  friend bool operator==(const Vec&, const Vec&) = default;

 private:
  std::vector<double> entries_;
};

Vec operator+(const Vec& a, const Vec& b);
Vec operator-(const Vec& a, const Vec& b);
Vec operator*(double s, const Vec& v);

double dot(const Vec& a, const Vec& b);
double sum(const Vec& v);
double norm2(const Vec& v);
double norm_inf(const Vec& v);
// ||a - b||_inf
double distance_inf(const Vec& a, const Vec& b);

// Dense row-major matrix with finite entries.
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);
  Matrix(std::initializer_list<std::initializer_list<double>> rows);

  static Matrix identity(std::size_t n);
  // Matrix whose j-th column is columns[j].
  static Matrix from_columns(std::span<const Vec> columns);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }
  double operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }
  std::span<const double> entries() const noexcept { return entries_; }

  Vec column(std::size_t j) const;
  Matrix transposed() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> entries_;
};

// General matrix-vector product.
Vec multiply(const Matrix& m, const Vec& x);

class StochasticMatrix;
StochasticMatrix validate_stochastic(const Matrix& m);

// Square matrix, entries in [0, 1], each column summing to 1 within
// kColumnSumTolerance. Entry (i, j) is the probability of moving to state i
// from state j. Only obtainable through validate_stochastic.
class StochasticMatrix {
 public:
  std::size_t dim() const noexcept { return matrix_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return matrix_(i, j); }
  const Matrix& matrix() const noexcept { return matrix_; }

  friend bool operator==(const StochasticMatrix&,
                         const StochasticMatrix&) = default;

 private:
  explicit StochasticMatrix(Matrix m) : matrix_(std::move(m)) {}
  friend StochasticMatrix validate_stochastic(const Matrix& m);

  Matrix matrix_;
};

// Throws NotSquare, NegativeEntry(i, j) or ColumnSumViolation(j, sum).
// Entries are kept bit-for-bit; nothing is renormalized.
StochasticMatrix validate_stochastic(const Matrix& m);

// A x. Throws DimensionMismatch.
Vec mat_vec(const StochasticMatrix& a, const Vec& x);

// Solves V c = b by Gaussian elimination with partial pivoting. Throws
// SingularMatrix when a pivot falls below kPivotTolerance.
Vec solve_linear(const Matrix& v, const Vec& b);

}  // namespace stochdyn
