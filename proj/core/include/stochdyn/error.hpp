#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace stochdyn {

enum class ErrorCode {
  kInvalidArgument,
  kNonFinite,
  kDimensionMismatch,
  kNotSquare,
  kNegativeEntry,
  kColumnSumViolation,
  kSingularMatrix,
  kComplexSpectrum,
  kDefectiveMatrix,
  kNoConvergence,
  kNoSteadyState,
  kNonUniqueStationary,
  kPeriodicChain,
  kCapExceeded,
  kSyntaxError,
  kDuplicateKey,
  kUnknownDirective,
  kNotTwoDimensional,
  kBurnInTooLarge,
};

std::string_view to_string(ErrorCode code) noexcept;

// Base of every exception thrown by the library. The code identifies the
// failure; what() carries a human-readable message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Stochasticity violations. `column` is always set; `row` only for
// kNegativeEntry. `line` is filled in when the matrix came from a chain spec
// file.
class ValidationError : public Error {
 public:
  ValidationError(ErrorCode code, const std::string& message,
                  std::optional<std::size_t> row, std::size_t column,
                  double value, std::optional<std::size_t> line = {});

  std::optional<std::size_t> row() const noexcept { return row_; }
  std::size_t column() const noexcept { return column_; }
  double value() const noexcept { return value_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  std::optional<std::size_t> row_;
  std::size_t column_;
  double value_;
  std::optional<std::size_t> line_;
};

// Failures of an eigenpair extraction. `index` is the 0-based extraction
// step that failed; `iterations` is set for kNoConvergence and `modulus` for
// kComplexSpectrum (estimated |lambda| of the complex pair).
class SpectralError : public Error {
 public:
  SpectralError(ErrorCode code, const std::string& message, std::size_t index,
                std::optional<std::size_t> iterations = {},
                std::optional<double> modulus = {});

  std::size_t index() const noexcept { return index_; }
  std::optional<std::size_t> iterations() const noexcept { return iterations_; }
  std::optional<double> modulus() const noexcept { return modulus_; }

 private:
  std::size_t index_;
  std::optional<std::size_t> iterations_;
  std::optional<double> modulus_;
};

// Chain spec syntax errors. line() is 1-based; 0 means the error is not tied
// to a particular line (e.g. a missing directive).
class ParseError : public Error {
 public:
  ParseError(ErrorCode code, std::size_t line, const std::string& message);

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace stochdyn
