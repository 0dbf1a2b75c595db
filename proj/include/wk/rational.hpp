#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace wk {

/// Exact rational scalar. Always stored canonically: lowest terms,
/// positive denominator, zero is 0/1 (gmp maintains this after
/// canonicalize()).
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) throw std::invalid_argument("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

inline std::string format_rational(const Rational& q) {
    return q.get_str();
}

inline bool is_integer(const Rational& q) {
    return q.get_den() == 1;
}

}  // namespace wk
