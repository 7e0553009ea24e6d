#pragma once

#include <cstdint>
#include <string>

#include "immunize/errors.hpp"

namespace immunize {

// Walk counts overflow int64 on large hubs (W8 of a hub in a million-edge
// graph exceeds 2^63), so all diagonal powers and closed-form values are
// carried as 128-bit integers with checked arithmetic. Overflow raises,
// never wraps.
using walk_int = __int128;

inline walk_int checked_add(walk_int a, walk_int b) {
    walk_int r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("walk count addition overflow");
    return r;
}

inline walk_int checked_sub(walk_int a, walk_int b) {
    walk_int r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("walk count subtraction overflow");
    return r;
}

inline walk_int checked_mul(walk_int a, walk_int b) {
    walk_int r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("walk count multiplication overflow");
    return r;
}

inline std::string to_string(walk_int x) {
    if (x == 0) return "0";
    bool neg = x < 0;
    std::string digits;
    // Avoid negating the minimum value; peel digits from the signed value.
    while (x != 0) {
        int d = static_cast<int>(x % 10);
        if (d < 0) d = -d;
        digits.push_back(static_cast<char>('0' + d));
        x /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
}

} // namespace immunize
