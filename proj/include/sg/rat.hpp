#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sg {

// Exact rational scalar. Always stored canonically: gcd-reduced, positive
// denominator. All coordinate arithmetic in the library is exact.
using Rat = mpq_class;
using Int = mpz_class;

// Parses "n" or "n/d" with an optional leading minus. Rejects everything
// else (whitespace, decimals, empty denominators, d == 0).
Rat rat_parse(std::string_view text);

// Canonical text form: "n" when the denominator is 1, otherwise "n/d".
std::string rat_str(const Rat& q);

// Total order helper usable in std::sort comparators.
inline int rat_cmp(const Rat& a, const Rat& b) { return cmp(a, b); }

// Safe fraction constructor. The two-argument mpq_class constructor does
// not reduce, and GMP comparisons assume canonical form, so every ratio
// built from numerator and denominator must pass through here.
inline Rat rat_frac(long n, long d) {
    Rat q(n, d);
    q.canonicalize();
    return q;
}

} // namespace sg
