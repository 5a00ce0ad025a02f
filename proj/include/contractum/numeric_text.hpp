#pragma once

#include <array>
#include <charconv>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <system_error>

#include "contractum/error.hpp"

namespace contractum {

namespace detail {

inline std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\t' || text.front() == '\r' || text.front() == '\n'))
        text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r' || text.back() == '\n'))
        text.remove_suffix(1);
    return text;
}

inline std::optional<double> parse_decimal(std::string_view text) {
    text = trim(text);
    if (text.empty())
        return std::nullopt;
    if (text.front() == '+')
        text.remove_prefix(1);
    // European decimal comma ("0,16") is accepted when it is the only separator.
    std::string buffer(text);
    if (buffer.find('.') == std::string::npos) {
        if (auto comma = buffer.find(','); comma != std::string::npos && buffer.find(',', comma + 1) == std::string::npos)
            buffer[comma] = '.';
    }
    double value = 0.0;
    const char* first = buffer.data();
    const char* last = buffer.data() + buffer.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last)
        return std::nullopt;
    return value;
}

} // namespace detail

/// Parses "0.25", "1/3", "-2", "0,16" into a double. Rationals are divided once.
inline std::optional<double> try_parse_real(std::string_view text) {
    text = detail::trim(text);
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = detail::parse_decimal(text.substr(0, slash));
        auto den = detail::parse_decimal(text.substr(slash + 1));
        if (!num || !den || *den == 0.0)
            return std::nullopt;
        return *num / *den;
    }
    return detail::parse_decimal(text);
}

inline double parse_real(std::string_view text, std::string_view what = "value") {
    if (auto value = try_parse_real(text))
        return *value;
    throw malformed_input("cannot parse " + std::string(what) + " '" + std::string(text) + "' as a real number");
}

/// Shortest round-trip decimal representation.
inline std::string format_real(double value) {
    if (std::isnan(value))
        return "nan";
    if (std::isinf(value))
        return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buffer{};
    auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value);
    return std::string(buffer.data(), ptr);
}

} // namespace contractum
