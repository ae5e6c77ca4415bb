#pragma once

#include <cstdint>
#include <vector>

#include "base_field.hpp"
#include "bigint.hpp"
#include "errors.hpp"
#include "poly.hpp"
#include "primes.hpp"

namespace cayleyff {

/// Upper bound on table-scale objects (group order, enumeration span).
/// Constructors beyond it require an explicit override.
constexpr std::uint64_t kSizeGuardLimit = std::uint64_t{1} << 24;

/// A monic primary polynomial together with its radical and von Mangoldt
/// weight lambda = deg(radical); poly = radical^(deg poly / lambda).
struct PrimaryRecord {
    Poly poly;
    Poly radical;
    std::uint32_t lambda = 0;
};

inline int mobius(std::uint64_t k) {
    int sign = 1;
    for (auto [p, e] : factor_small_u64(k)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

/// pi_k = (1/k) sum_{s|k} mu(s) q^(k/s), the number of monic irreducibles
/// of degree exactly k, as an exact integer.
inline Bigint count_irreducibles(const BaseField& F, std::uint32_t k) {
    if (k == 0) throw degree_mismatch("irreducible degree must be >= 1");
    Bigint sum = 0;
    for (std::uint64_t s : divisors_u64(k)) {
        int mu = mobius(s);
        if (mu == 0) continue;
        Bigint term = pow_int(Bigint(F.q()), k / s);
        sum += mu > 0 ? term : -term;
    }
    return sum / k;
}

/// |P_d| = sum_{k|d} pi_k, the number of monic primaries of degree d.
inline Bigint count_primary(const BaseField& F, std::uint32_t d) {
    if (d == 0) throw degree_mismatch("primary degree must be >= 1");
    Bigint sum = 0;
    for (std::uint64_t k : divisors_u64(d)) sum += count_irreducibles(F, static_cast<std::uint32_t>(k));
    return sum;
}

/// Rabin's test: g irreducible iff x^(q^e) = x mod g and the Frobenius
/// orbit escapes every maximal proper subfield step.
inline bool is_irreducible(const BaseField& F, const Poly& g) {
    if (poly_is_zero(g)) throw zero_polynomial();
    if (!poly_is_monic(g)) throw not_monic(poly_to_string(g));
    std::uint32_t e = static_cast<std::uint32_t>(poly_degree(g));
    if (e == 0) throw degree_mismatch("irreducibility is defined for degree >= 1");
    if (e == 1) return true;
    if (F.q() <= 64) {  // cheap linear-factor reject before the Frobenius walk
        for (Felt c = 0; c < F.q(); ++c)
            if (poly_eval(F, g, c) == 0) return false;
    }

    std::vector<std::uint32_t> checkpoints;  // e/r for each prime r | e
    for (std::uint64_t r : prime_divisors_u64(e)) checkpoints.push_back(e / static_cast<std::uint32_t>(r));

    Poly x = poly_rem(F, poly_x(), g);
    Poly t = x;
    for (std::uint32_t i = 1; i <= e; ++i) {
        t = poly_powmod(F, t, F.q(), g);  // t = x^(q^i) mod g
        for (std::uint32_t cp : checkpoints)
            if (i == cp && poly_degree(poly_gcd(F, poly_sub(F, t, x), g)) != 0) return false;
    }
    return t == x;
}

namespace detail {

inline void check_enum_span(const BaseField& F, std::uint32_t k) {
    Bigint span = pow_int(Bigint(F.q()), k);
    if (span > kSizeGuardLimit) throw size_guard("q^k exceeds the enumeration guard");
}

}  // namespace detail

/// All monic irreducibles of degree exactly k, ascending code order
/// (constant term fastest); length pi_k.
inline std::vector<Poly> enumerate_irreducibles(const BaseField& F, std::uint32_t k) {
    if (k == 0) throw degree_mismatch("irreducible degree must be >= 1");
    detail::check_enum_span(F, k);
    std::uint64_t span = 1;
    for (std::uint32_t i = 0; i < k; ++i) span *= F.q();
    std::vector<Poly> out;
    for (std::uint64_t code = 0; code < span; ++code) {
        Poly g = poly_from_code(F, code);
        g.coeffs.resize(k + 1, 0);
        g.coeffs[k] = 1;
        if (is_irreducible(F, g)) out.push_back(std::move(g));
    }
    return out;
}

/// Smallest monic irreducible of degree k by code order, found lazily
/// (no span guard: irreducibles have density 1/k among monics).
inline Poly first_irreducible(const BaseField& F, std::uint32_t k) {
    if (k == 0) throw degree_mismatch("irreducible degree must be >= 1");
    Bigint span_big = pow_int(Bigint(F.q()), k);
    std::uint64_t span = span_big > (Bigint(1) << 62) ? (std::uint64_t{1} << 62) : static_cast<std::uint64_t>(span_big);
    for (std::uint64_t code = 0; code < span; ++code) {
        Poly g = poly_from_code(F, code);
        g.coeffs.resize(k + 1, 0);
        g.coeffs[k] = 1;
        if (is_irreducible(F, g)) return g;
    }
    throw internal_error("no irreducible of the requested degree");
}

/// P_d: for every k | d (ascending) and every irreducible h of degree k
/// (ascending code), the record for h^(d/k); length |P_d|.
inline std::vector<PrimaryRecord> enumerate_primary(const BaseField& F, std::uint32_t d) {
    if (d == 0) throw degree_mismatch("primary degree must be >= 1");
    std::vector<PrimaryRecord> out;
    for (std::uint64_t k64 : divisors_u64(d)) {
        std::uint32_t k = static_cast<std::uint32_t>(k64);
        for (Poly& h : enumerate_irreducibles(F, k)) {
            PrimaryRecord rec;
            rec.poly = poly_pow(F, h, d / k);
            rec.radical = std::move(h);
            rec.lambda = k;
            out.push_back(std::move(rec));
        }
    }
    return out;
}

/// I_d: all monic irreducibles of degree dividing d, grouped by degree
/// ascending; |I_d| = |P_d| via h -> h^(d/deg h).
inline std::vector<Poly> enumerate_irr_divisors(const BaseField& F, std::uint32_t d) {
    if (d == 0) throw degree_mismatch("degree must be >= 1");
    std::vector<Poly> out;
    for (std::uint64_t k : divisors_u64(d)) {
        std::vector<Poly> irr = enumerate_irreducibles(F, static_cast<std::uint32_t>(k));
        for (Poly& h : irr) out.push_back(std::move(h));
    }
    return out;
}

}  // namespace cayleyff
