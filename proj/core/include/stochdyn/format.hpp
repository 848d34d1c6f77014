#pragma once

#include <span>
#include <string>

namespace stochdyn {

// Locale-independent number rendering built on std::to_chars.

// Shortest text that parses back to exactly `value`.
std::string format_shortest(double value);

// printf("%.*g") equivalent.
std::string format_significant(double value, int digits);

// printf("%.*f") equivalent.
std::string format_fixed(double value, int decimals);

// Joins format_significant(v, digits) of each value with `separator`.
std::string join_significant(std::span<const double> values, int digits,
                             std::string_view separator = ", ");

}  // namespace stochdyn
