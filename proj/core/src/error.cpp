#include "stochdyn/error.hpp"

#include <utility>

namespace stochdyn {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kNonFinite: return "NonFinite";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kNotSquare: return "NotSquare";
    case ErrorCode::kNegativeEntry: return "NegativeEntry";
    case ErrorCode::kColumnSumViolation: return "ColumnSumViolation";
    case ErrorCode::kSingularMatrix: return "SingularMatrix";
    case ErrorCode::kComplexSpectrum: return "ComplexSpectrum";
    case ErrorCode::kDefectiveMatrix: return "DefectiveMatrix";
    case ErrorCode::kNoConvergence: return "NoConvergence";
    case ErrorCode::kNoSteadyState: return "NoSteadyState";
    case ErrorCode::kNonUniqueStationary: return "NonUniqueStationary";
    case ErrorCode::kPeriodicChain: return "PeriodicChain";
    case ErrorCode::kCapExceeded: return "CapExceeded";
    case ErrorCode::kSyntaxError: return "SyntaxError";
    case ErrorCode::kDuplicateKey: return "DuplicateKey";
    case ErrorCode::kUnknownDirective: return "UnknownDirective";
    case ErrorCode::kNotTwoDimensional: return "NotTwoDimensional";
    case ErrorCode::kBurnInTooLarge: return "BurnInTooLarge";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(message), code_(code) {}

ValidationError::ValidationError(ErrorCode code, const std::string& message,
                                 std::optional<std::size_t> row,
                                 std::size_t column, double value,
                                 std::optional<std::size_t> line)
    : Error(code, message),
      row_(row),
      column_(column),
      value_(value),
      line_(line) {}

SpectralError::SpectralError(ErrorCode code, const std::string& message,
                             std::size_t index,
                             std::optional<std::size_t> iterations,
                             std::optional<double> modulus)
    : Error(code, message),
      index_(index),
      iterations_(iterations),
      modulus_(modulus) {}

ParseError::ParseError(ErrorCode code, std::size_t line,
                       const std::string& message)
    : Error(code, line == 0 ? message
                            : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

}  // namespace stochdyn
