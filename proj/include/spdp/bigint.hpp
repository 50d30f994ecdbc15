#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>

namespace spdp {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Exact binomial coefficient C(n, k); zero when k < 0 or k > n.
inline Integer binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n || n < 0) return 0;
    if (k > n - k) k = n - k;
    Integer r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= (n - k + i);
        r /= i;
    }
    return r;
}

/// base^exp for non-negative exponents.
inline Integer ipow(const Integer& base, std::uint64_t exp) {
    Integer r = 1;
    Integer b = base;
    while (exp > 0) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

/// Number of multilinear monomials of degree <= d over n variables.
inline Integer multilinear_count(std::int64_t n, std::int64_t d) {
    Integer total = 0;
    for (std::int64_t j = 0; j <= d && j <= n; ++j) total += binomial(n, j);
    return total;
}

/// Number of standard monomials of degree <= d over n variables: C(n+d, d).
inline Integer standard_count(std::int64_t n, std::int64_t d) {
    return binomial(n + d, d);
}

} // namespace spdp
