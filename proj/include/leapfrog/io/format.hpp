#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace leapfrog::io {

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

/// Strict decimal parse; throws std::invalid_argument naming `what` on junk.
double parse_double(std::string_view text, std::string_view what);
long long parse_integer(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);

/// Comma-separated doubles; an empty string yields an empty list.
std::vector<double> parse_double_list(std::string_view text, std::string_view what);
std::string format_double_list(const std::vector<double>& xs);

std::string_view trim(std::string_view s);

}  // namespace leapfrog::io
