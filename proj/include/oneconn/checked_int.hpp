#pragma once

#include <cstdint>
#include <string>

#include "oneconn/errors.hpp"

namespace oneconn {

using Int = std::int64_t;

inline Int checked_add(Int a, Int b) {
    Int r;
    if (__builtin_add_overflow(a, b, &r))
        throw ArithmeticOverflow("integer overflow: " + std::to_string(a) + " + " + std::to_string(b));
    return r;
}

inline Int checked_sub(Int a, Int b) {
    Int r;
    if (__builtin_sub_overflow(a, b, &r))
        throw ArithmeticOverflow("integer overflow: " + std::to_string(a) + " - " + std::to_string(b));
    return r;
}

inline Int checked_mul(Int a, Int b) {
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw ArithmeticOverflow("integer overflow: " + std::to_string(a) + " * " + std::to_string(b));
    return r;
}

// Floor division, b > 0.
inline Int floor_div(Int a, Int b) {
    Int q = a / b;
    if ((a % b != 0) && (a < 0))
        --q;
    return q;
}

} // namespace oneconn
