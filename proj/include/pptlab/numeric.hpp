#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "pptlab/errors.hpp"

namespace pptlab {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int pow_int(Int base, int64_t e) {
    if (e < 0) throw ValidationError("pow_int: negative exponent");
    Int r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rat pow_rat(const Rat& base, int64_t e) {
    if (e >= 0) {
        return Rat(pow_int(numerator(base), e), pow_int(denominator(base), e));
    }
    if (base == 0) throw ValidationError("pow_rat: zero to negative power");
    return Rat(pow_int(denominator(base), -e), pow_int(numerator(base), -e));
}

/// floor of a rational, exact.
inline Int floor_rat(const Rat& q) {
    Int n = numerator(q), d = denominator(q);  // d > 0 canonical
    Int quo = n / d;
    if (n % d != 0 && n < 0) quo -= 1;
    return quo;
}

inline Rat abs_rat(const Rat& q) { return q < 0 ? Rat(-q) : q; }

std::string rat_to_string(const Rat& q);
Rat rat_from_string(const std::string& s);

}  // namespace pptlab
