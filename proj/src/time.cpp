// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#include "brblab/time.hpp"

#include <charconv>

namespace brblab {

std::string time_to_string(const Time& t)
{
    return std::to_string(t.numerator()) + "/" + std::to_string(t.denominator());
}

static std::int64_t parse_i64(std::string_view s)
{
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        throw std::invalid_argument("bad integer in time literal: '" + std::string(s) + "'");
    return v;
}

Time parse_time(const std::string& s)
{
    auto slash = s.find('/');
    if (slash == std::string::npos)
        return Time{parse_i64(s), 1};
    auto num = parse_i64(std::string_view(s).substr(0, slash));
    auto den = parse_i64(std::string_view(s).substr(slash + 1));
    if (den <= 0)
        throw std::invalid_argument("time denominator must be positive: '" + s + "'");
    return Time{num, den};
}

} // namespace brblab
