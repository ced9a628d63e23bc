#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace transvecta {

/// Parses a decimal literal ('.' separator, optional exponent). The whole
/// string must be consumed. Throws std::invalid_argument.
double parse_real(std::string_view text);

/// Shortest text that round-trips to the same double.
std::string format_real(double value);

std::vector<std::string_view> split(std::string_view text, char sep);

}  // namespace transvecta
