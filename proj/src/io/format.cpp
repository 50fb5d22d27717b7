#include "leapfrog/io/format.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

namespace leapfrog::io {

std::string format_double(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    std::array<char, 32> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
    if (ec != std::errc()) {
        throw std::runtime_error("cannot format double");
    }
    return std::string(buf.data(), end);
}

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view what)
{
    const std::string_view t = trim(text);
    if (t == "nan") {
        return std::nan("");
    }
    if (t == "inf") {
        return INFINITY;
    }
    if (t == "-inf") {
        return -INFINITY;
    }
    double x = 0;
    const char* begin = t.data();
    if (!t.empty() && t.front() == '+') {
        ++begin;
    }
    auto [ptr, ec] = std::from_chars(begin, t.data() + t.size(), x);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw std::invalid_argument(std::string(what) + ": not a number: '" + std::string(text) + "'");
    }
    return x;
}

long long parse_integer(std::string_view text, std::string_view what)
{
    const std::string_view t = trim(text);
    long long x = 0;
    auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), x);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw std::invalid_argument(std::string(what) + ": not an integer: '" + std::string(text) + "'");
    }
    return x;
}

bool parse_bool(std::string_view text, std::string_view what)
{
    const std::string_view t = trim(text);
    if (t == "true" || t == "1" || t == "yes") {
        return true;
    }
    if (t == "false" || t == "0" || t == "no") {
        return false;
    }
    throw std::invalid_argument(std::string(what) + ": not a boolean: '" + std::string(text) + "'");
}

std::vector<double> parse_double_list(std::string_view text, std::string_view what)
{
    std::vector<double> out;
    std::string_view rest = trim(text);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        out.push_back(parse_double(rest.substr(0, comma), what));
        if (comma == std::string_view::npos) {
            break;
        }
        rest = rest.substr(comma + 1);
        if (trim(rest).empty()) {
            throw std::invalid_argument(std::string(what) + ": trailing comma");
        }
    }
    return out;
}

std::string format_double_list(const std::vector<double>& xs)
{
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) {
            s += ',';
        }
        s += format_double(xs[i]);
    }
    return s;
}

}  // namespace leapfrog::io
