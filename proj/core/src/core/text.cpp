#include "nmf/text.hpp"

#include <charconv>
#include <cstdio>

#include "nmf/errors.hpp"

namespace nmf {

std::vector<std::string> split(std::string_view text, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            parts.emplace_back(text.substr(start));
            return parts;
        }
        parts.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
}

double parse_double(std::string_view text, std::string_view what) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    if (!text.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last) {
        throw ParseError("invalid number for " + std::string(what) + ": \"" + std::string(text) + "\"");
    }
    return value;
}

long long parse_integer(std::string_view text, std::string_view what) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("invalid integer for " + std::string(what) + ": \"" + std::string(text) + "\"");
    }
    return value;
}

std::uint64_t parse_unsigned(std::string_view text, std::string_view what) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || ec != std::errc{} || ptr != text.data() + text.size()) {
        throw ParseError("invalid non-negative integer for " + std::string(what) + ": \"" + std::string(text) + "\"");
    }
    return value;
}

std::vector<double> parse_double_list(std::string_view text, std::string_view what) {
    std::vector<double> values;
    for (const std::string& part : split(text, ',')) values.push_back(parse_double(part, what));
    return values;
}

std::string format_shortest(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, ptr);
}

std::string format_significant(double x, int digits) {
    if (x == 0.0) x = 0.0;  // drop the sign of negative zero
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

}  // namespace nmf
