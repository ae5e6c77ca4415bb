#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace cayleyff {

using Bigint = boost::multiprecision::cpp_int;

using boost::multiprecision::gcd;
using boost::multiprecision::lcm;

inline Bigint pow_int(const Bigint& base, std::uint64_t exp) {
    Bigint r = 1, b = base;
    while (exp) {
        if (exp & 1) r *= b;
        b *= b;
        exp >>= 1;
    }
    return r;
}

/// C(n, k) as an exact integer; 0 when k < 0 or k > n.
inline Bigint binomial(std::uint64_t n, std::int64_t k) {
    if (k < 0 || static_cast<std::uint64_t>(k) > n) return 0;
    Bigint r = 1;
    for (std::int64_t i = 1; i <= k; ++i) {
        r *= Bigint(n - static_cast<std::uint64_t>(i) + 1);
        r /= i;  // exact at every step: r is C(n', i) * ...
    }
    return r;
}

/// C(n, k) for arbitrary-precision n and small k.
inline Bigint binomial_big(const Bigint& n, std::uint64_t k) {
    if (n < 0 || Bigint(k) > n) return 0;
    Bigint r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - Bigint(i) + 1;
        r /= i;
    }
    return r;
}

inline std::string to_string(const Bigint& v) { return v.str(); }

}  // namespace cayleyff
