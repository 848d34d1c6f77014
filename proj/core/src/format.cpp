#include "stochdyn/format.hpp"

#include <array>
#include <charconv>

namespace stochdyn {

namespace {

template <typename... Args>
std::string to_chars_string(double value, Args... args) {
  std::array<char, 512> buffer{};
  auto [end, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value, args...);
  if (ec != std::errc{}) return "nan";
  std::string out(buffer.data(), end);
  if (out == "-0") out = "0";
  return out;
}

}  // namespace

std::string format_shortest(double value) {
  std::array<char, 64> buffer{};
  auto [end, ec] =
      std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
  return ec == std::errc{} ? std::string(buffer.data(), end) : "nan";
}

std::string format_significant(double value, int digits) {
  return to_chars_string(value, std::chars_format::general, digits);
}

std::string format_fixed(double value, int decimals) {
  std::string out = to_chars_string(value, std::chars_format::fixed, decimals);
  // "-0.000" is not a useful distinction in rendered output.
  if (out.starts_with('-') && out.find_first_not_of("-0.") == std::string::npos)
    out.erase(0, 1);
  return out;
}

std::string join_significant(std::span<const double> values, int digits,
                             std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += separator;
    out += format_significant(values[i], digits);
  }
  return out;
}

}  // namespace stochdyn
