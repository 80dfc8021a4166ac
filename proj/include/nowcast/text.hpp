#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace nowcast::text {

/// Shortest decimal form that parses back to the same double.
std::string shortest(double value);
/// Fixed-point with `decimals` digits after the point.
std::string fixed(double value, int decimals);

std::string_view trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

/// Parses a finite double covering the whole (trimmed) input.
bool parse_double(std::string_view s, double& out);

}  // namespace nowcast::text
