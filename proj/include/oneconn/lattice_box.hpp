#pragma once

// The box {a : 0 ≤ a ≤ d} of effective subdivisors, enumerated by mixed-radix counting with
// component 0 as the least significant digit. Every tie-break in the library uses the order
// this counting induces ("colex": compare from the last component down).

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>

#include "oneconn/config.hpp"

namespace oneconn {

inline constexpr std::uint64_t saturated = std::numeric_limits<std::uint64_t>::max();

// Π(d_i + 1), saturating at UINT64_MAX.
inline std::uint64_t box_size(std::span<const Int> d) {
    unsigned __int128 p = 1;
    for (Int v : d) {
        p *= static_cast<unsigned __int128>(v) + 1;
        if (p > saturated)
            return saturated;
    }
    return static_cast<std::uint64_t>(p);
}

// true iff x precedes y in counting order.
inline bool colex_less(std::span<const Int> x, std::span<const Int> y) {
    for (std::size_t i = x.size(); i-- > 0;) {
        if (x[i] != y[i])
            return x[i] < y[i];
    }
    return false;
}

inline std::uint64_t box_index(std::span<const Int> a, std::span<const Int> d) {
    std::uint64_t idx = 0;
    for (std::size_t i = a.size(); i-- > 0;)
        idx = idx * static_cast<std::uint64_t>(d[i] + 1) + static_cast<std::uint64_t>(a[i]);
    return idx;
}

inline void box_digits(std::uint64_t index, std::span<const Int> d, std::span<Int> out) {
    for (std::size_t i = 0; i < d.size(); ++i) {
        const auto radix = static_cast<std::uint64_t>(d[i] + 1);
        out[i] = static_cast<Int>(index % radix);
        index /= radix;
    }
}

inline Multiplicity box_digits(std::uint64_t index, std::span<const Int> d) {
    Multiplicity out(d.size());
    box_digits(index, d, out);
    return out;
}

// Advances a to its successor in the box; returns false after the last element (a wraps to 0).
inline bool box_advance(std::span<Int> a, std::span<const Int> d) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < d[i]) {
            ++a[i];
            return true;
        }
        a[i] = 0;
    }
    return false;
}

} // namespace oneconn
