#pragma once

#include <gmpxx.h>

#include <string>

namespace cechdr {

// Exact arithmetic throughout: arbitrary-precision integers and canonical
// rationals (gcd(|num|, den) = 1, den > 0), backed by GMP.
using Integer = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(const Integer& num, const Integer& den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline Rational make_rational(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline std::string to_string(const Rational& q) { return q.get_str(); }

inline std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace cechdr
