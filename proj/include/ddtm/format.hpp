#pragma once

#include <charconv>
#include <string>
#include <string_view>

#include "ddtm/error.hpp"

namespace ddtm {

/// Shortest decimal text that parses back to exactly `x`.
inline std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return {buf, res.ptr};
}

inline double parse_double(std::string_view text) {
    double x = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ParameterError("not a number: '" + std::string(text) + "'");
    return x;
}

template <class Int>
Int parse_integer(std::string_view text) {
    Int x{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), x);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
        throw ParameterError("not an integer: '" + std::string(text) + "'");
    return x;
}

}  // namespace ddtm
