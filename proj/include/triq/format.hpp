#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace triq {

/// Shortest decimal text that parses back to exactly `x`.
std::string format_double(double x);

/// Parses a comma-separated line of numbers; throws Error(Io) on bad input.
std::vector<double> parse_csv_doubles(std::string_view line);

}  // namespace triq
