#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nmf {

std::vector<std::string> split(std::string_view text, char sep);

/// Strict full-string parses; throw ParseError naming `what` on failure.
double parse_double(std::string_view text, std::string_view what);
long long parse_integer(std::string_view text, std::string_view what);
std::uint64_t parse_unsigned(std::string_view text, std::string_view what);
std::vector<double> parse_double_list(std::string_view text, std::string_view what);

/// Shortest decimal that round-trips, e.g. "0.4", "1", "-0.5".
std::string format_shortest(double x);

/// printf %.6g
std::string format_significant(double x, int digits = 6);

}  // namespace nmf
