// Copyright 2026 The brblab authors. Licensed under the Apache License,
// Version 2.0. See http://www.apache.org/licenses/LICENSE-2.0
#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace brblab {

// All simulation timestamps and delays are exact rationals.  No floating
// point anywhere in the time domain, so replays are bit-exact.
using Time = boost::rational<std::int64_t>;

// Smallest delay a delivery may have.  Zero or negative delays are rejected.
inline Time min_delay_quantum() { return Time{1, 1000}; }

inline std::int64_t time_floor(const Time& t)
{
    std::int64_t q = t.numerator() / t.denominator();
    if (t.numerator() < 0 && q * t.denominator() != t.numerator())
        --q;
    return q;
}

// Canonical wire form is always "p/q", e.g. "3/1", "1/1000".
std::string time_to_string(const Time& t);

// Accepts "p/q" and bare integers "p".
Time parse_time(const std::string& s);

} // namespace brblab
