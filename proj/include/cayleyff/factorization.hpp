#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "primes.hpp"

namespace cayleyff {

/// Prime-power decomposition, primes strictly increasing; recomposes to the
/// factored value exactly.
struct Factorization {
    std::vector<std::pair<Bigint, std::uint32_t>> factors;

    bool operator==(const Factorization&) const = default;
};

inline Bigint fact_value(const Factorization& f) {
    Bigint v = 1;
    for (const auto& [p, k] : f.factors) v *= pow_int(p, k);
    return v;
}

/// "p^k * p^k * ..." with ascending primes; exponent 1 prints bare.
inline std::string fact_to_string(const Factorization& f) {
    std::string out;
    for (const auto& [p, k] : f.factors) {
        if (!out.empty()) out += " * ";
        out += p.str();
        if (k > 1) {
            out += '^';
            out += std::to_string(k);
        }
    }
    return out.empty() ? "1" : out;
}

inline Factorization parse_factorization(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw bad_hint("empty factorization string");
    std::map<Bigint, std::uint32_t> acc;
    std::size_t i = 0;
    while (i < s.size()) {
        std::size_t start = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (i == start) throw bad_hint("expected a prime in factorization string");
        Bigint p(s.substr(start, i - start));
        std::uint64_t k = 1;
        if (i < s.size() && s[i] == '^') {
            ++i;
            start = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (i == start) throw bad_hint("expected an exponent after '^'");
            k = std::stoull(s.substr(start, i - start));
            if (k == 0) throw bad_hint("zero exponent");
        }
        acc[p] += static_cast<std::uint32_t>(k);
        if (i < s.size()) {
            if (s[i] != '*') throw bad_hint("expected '*' between factors");
            ++i;
            if (i == s.size()) throw bad_hint("dangling '*'");
        }
    }
    Factorization out;
    for (auto& [p, k] : acc) out.factors.emplace_back(p, k);
    return out;
}

/// Miller-Rabin: deterministic witness set below 2^64, the first 30 primes
/// as fixed bases above (deterministic behavior, desk-scale certainty).
inline bool is_prime_big(const Bigint& n) {
    if (n <= std::numeric_limits<std::uint64_t>::max()) return is_prime_u64(static_cast<std::uint64_t>(n));
    if ((n & 1) == 0) return false;
    Bigint d = n - 1;
    std::uint64_t s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    static const std::uint32_t bases[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                                          53, 59, 61, 67, 71, 73, 79, 83, 89, 97, 101, 103, 107, 109, 113};
    for (std::uint32_t a : bases) {
        Bigint x = boost::multiprecision::powm(Bigint(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool witness = true;
        for (std::uint64_t i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                witness = false;
                break;
            }
        }
        if (witness) return false;
    }
    return true;
}

namespace detail {

/// Brent's cycle variant of the rho method, deterministic (c = 1, 2, ...).
/// Decrements `budget` per iteration and gives up at zero.
inline Bigint rho_split(const Bigint& n, std::uint64_t& budget) {
    if ((n & 1) == 0) return 2;
    for (std::uint64_t c = 1;; ++c) {
        Bigint y = 2, r = 1, q = 1, g = 1, x = 0, ys = 0;
        const std::uint64_t batch = 128;
        while (g == 1) {
            x = y;
            for (Bigint i = 0; i < r; ++i) {
                if (budget == 0) throw give_up("factoring budget exhausted; supply the factorization explicitly");
                --budget;
                y = (y * y + c) % n;
            }
            Bigint k = 0;
            while (k < r && g == 1) {
                ys = y;
                std::uint64_t lim = batch < static_cast<std::uint64_t>(r - k) ? batch : static_cast<std::uint64_t>(r - k);
                for (std::uint64_t i = 0; i < lim; ++i) {
                    if (budget == 0) throw give_up("factoring budget exhausted; supply the factorization explicitly");
                    --budget;
                    y = (y * y + c) % n;
                    q = q * abs(x - y) % n;
                }
                g = gcd(q, n);
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // Backtrack one step at a time to recover the factor.
            do {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n) return g;
        // Cycle degenerated for this c; retry with the next increment.
    }
}

inline void factor_rec(Bigint n, std::map<Bigint, std::uint32_t>& acc, std::uint64_t& budget) {
    if (n == 1) return;
    if (is_prime_big(n)) {
        acc[n] += 1;
        return;
    }
    Bigint d = rho_split(n, budget);
    factor_rec(d, acc, budget);
    factor_rec(n / d, acc, budget);
}

}  // namespace detail

constexpr std::uint64_t kTrialDivisionBound = 1000000;
constexpr std::uint64_t kRhoBudgetDefault = 4000000;

/// Complete factorization: trial division to a fixed bound, then Brent rho
/// under a deterministic effort budget. A validated hint short-circuits.
inline Factorization factor(const Bigint& N, const std::optional<Factorization>& hint = std::nullopt,
                            std::uint64_t rho_budget = kRhoBudgetDefault) {
    if (N < 2) throw parse_error("factor requires N >= 2");
    if (hint) {
        if (fact_value(*hint) != N) throw bad_hint("hint does not multiply back to N");
        for (std::size_t i = 0; i < hint->factors.size(); ++i) {
            const auto& [p, k] = hint->factors[i];
            if (k == 0) throw bad_hint("zero exponent in hint");
            if (!is_prime_big(p)) throw bad_hint("composite entry in hint: " + p.str());
            if (i > 0 && hint->factors[i - 1].first >= p) throw bad_hint("hint primes must be strictly increasing");
        }
        return *hint;
    }
    std::map<Bigint, std::uint32_t> acc;
    Bigint rest = N;
    for (std::uint64_t p = 2; p <= kTrialDivisionBound && Bigint(p) * p <= rest; p += (p == 2 ? 1 : 2)) {
        while (rest % p == 0) {
            acc[p] += 1;
            rest /= p;
        }
    }
    if (rest > 1) {
        if (Bigint(kTrialDivisionBound) * kTrialDivisionBound >= rest) {
            acc[rest] += 1;  // below the trial bound squared, the cofactor is prime
        } else {
            detail::factor_rec(rest, acc, rho_budget);
        }
    }
    Factorization out;
    for (auto& [p, k] : acc) out.factors.emplace_back(p, k);
    return out;
}

}  // namespace cayleyff
