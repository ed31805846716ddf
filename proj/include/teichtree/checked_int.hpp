#pragma once

#include <cstdint>
#include <numeric>

#include "errors.hpp"

namespace teichtree {

using Coeff = std::int64_t;

inline Coeff add_ck(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_add_overflow(a, b, &r)) throw OverflowError("integer overflow in +");
    return r;
}

inline Coeff sub_ck(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("integer overflow in -");
    return r;
}

inline Coeff mul_ck(Coeff a, Coeff b) {
    Coeff r;
    if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("integer overflow in *");
    return r;
}

// Quotient of an exact integer division; complains loudly otherwise.
inline Coeff div_exact(Coeff a, Coeff b) {
    if (b == 0 || a % b != 0) throw NonExactDivision("non-exact integer division");
    return a / b;
}

inline Coeff gcd_nonneg(Coeff a, Coeff b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        Coeff t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace teichtree
