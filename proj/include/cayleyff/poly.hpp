#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "base_field.hpp"
#include "errors.hpp"

namespace cayleyff {

/// Dense polynomial over a base field: coefficient of x^i at slot i, no
/// trailing zeros, the zero polynomial is the empty vector.
struct Poly {
    std::vector<Felt> coeffs;

    bool operator==(const Poly&) const = default;
};

inline void poly_trim(Poly& a) {
    while (!a.coeffs.empty() && a.coeffs.back() == 0) a.coeffs.pop_back();
}

inline bool poly_is_zero(const Poly& a) { return a.coeffs.empty(); }

/// Degree; -1 for the zero polynomial.
inline std::int64_t poly_degree(const Poly& a) { return static_cast<std::int64_t>(a.coeffs.size()) - 1; }

inline bool poly_is_monic(const Poly& a) { return !a.coeffs.empty() && a.coeffs.back() == 1; }

inline Poly poly_zero() { return {}; }

inline Poly poly_one() { return {{1}}; }

inline Poly poly_x() { return {{0, 1}}; }

inline Poly poly_constant(Felt c) { return c == 0 ? Poly{} : Poly{{c}}; }

inline Poly poly_add(const BaseField& F, const Poly& a, const Poly& b) {
    Poly out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        Felt ca = i < a.coeffs.size() ? a.coeffs[i] : 0;
        Felt cb = i < b.coeffs.size() ? b.coeffs[i] : 0;
        out.coeffs[i] = F.add(ca, cb);
    }
    poly_trim(out);
    return out;
}

inline Poly poly_sub(const BaseField& F, const Poly& a, const Poly& b) {
    Poly out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        Felt ca = i < a.coeffs.size() ? a.coeffs[i] : 0;
        Felt cb = i < b.coeffs.size() ? b.coeffs[i] : 0;
        out.coeffs[i] = F.sub(ca, cb);
    }
    poly_trim(out);
    return out;
}

inline Poly poly_scale(const BaseField& F, const Poly& a, Felt c) {
    if (c == 0) return {};
    Poly out = a;
    for (Felt& x : out.coeffs) x = F.mul(x, c);
    return out;
}

inline Poly poly_mul(const BaseField& F, const Poly& a, const Poly& b) {
    if (poly_is_zero(a) || poly_is_zero(b)) return {};
    Poly out;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (a.coeffs[i] == 0) continue;
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            out.coeffs[i + j] = F.add(out.coeffs[i + j], F.mul(a.coeffs[i], b.coeffs[j]));
    }
    return out;
}

/// Quotient and remainder of a by b, deg(rem) < deg(b).
inline std::pair<Poly, Poly> poly_divmod(const BaseField& F, const Poly& a, const Poly& b) {
    if (poly_is_zero(b)) throw division_by_zero();
    Poly rem = a;
    Poly quot;
    if (rem.coeffs.size() >= b.coeffs.size()) quot.coeffs.assign(rem.coeffs.size() - b.coeffs.size() + 1, 0);
    Felt lead_inv = F.inv(b.coeffs.back());
    while (rem.coeffs.size() >= b.coeffs.size()) {
        Felt c = F.mul(rem.coeffs.back(), lead_inv);
        std::size_t shift = rem.coeffs.size() - b.coeffs.size();
        quot.coeffs[shift] = c;
        for (std::size_t i = 0; i < b.coeffs.size(); ++i)
            rem.coeffs[shift + i] = F.sub(rem.coeffs[shift + i], F.mul(c, b.coeffs[i]));
        poly_trim(rem);
        if (poly_is_zero(rem)) break;
    }
    poly_trim(quot);
    return {std::move(quot), std::move(rem)};
}

inline Poly poly_rem(const BaseField& F, const Poly& a, const Poly& b) {
    return poly_divmod(F, a, b).second;
}

/// Monic gcd; gcd(0, 0) = 0.
inline Poly poly_gcd(const BaseField& F, Poly a, Poly b) {
    while (!poly_is_zero(b)) {
        Poly r = poly_rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (!poly_is_zero(a) && a.coeffs.back() != 1) a = poly_scale(F, a, F.inv(a.coeffs.back()));
    return a;
}

inline Poly poly_mulmod(const BaseField& F, const Poly& a, const Poly& b, const Poly& mod) {
    return poly_rem(F, poly_mul(F, a, b), mod);
}

/// base^e mod `mod` by square-and-multiply; exponent is a machine word,
/// enough for x^q steps (q is guarded to a machine word).
inline Poly poly_powmod(const BaseField& F, Poly base, std::uint64_t e, const Poly& mod) {
    Poly r = poly_rem(F, poly_one(), mod);
    base = poly_rem(F, base, mod);
    while (e) {
        if (e & 1) r = poly_mulmod(F, r, base, mod);
        base = poly_mulmod(F, base, base, mod);
        e >>= 1;
    }
    return r;
}

/// Plain power, no modulus (used to rebuild primaries from their radicals).
inline Poly poly_pow(const BaseField& F, const Poly& base, std::uint32_t e) {
    Poly r = poly_one();
    for (std::uint32_t i = 0; i < e; ++i) r = poly_mul(F, r, base);
    return r;
}

inline Felt poly_eval(const BaseField& F, const Poly& a, Felt x) {
    Felt acc = 0;
    for (std::size_t i = a.coeffs.size(); i-- > 0;) acc = F.add(F.mul(acc, x), a.coeffs[i]);
    return acc;
}

/// Integer code Σ c_i q^i; orders polynomials of equal degree
/// lexicographically with the constant term varying fastest.
inline std::uint64_t poly_code(const BaseField& F, const Poly& a) {
    std::uint64_t code = 0;
    for (std::size_t i = a.coeffs.size(); i-- > 0;) code = code * F.q() + a.coeffs[i];
    return code;
}

inline Poly poly_from_code(const BaseField& F, std::uint64_t code) {
    Poly out;
    while (code) {
        out.coeffs.push_back(static_cast<Felt>(code % F.q()));
        code /= F.q();
    }
    return out;
}

/// Canonical text form: ascending coefficient list, e.g. "[1,1,0,0,1]".
inline std::string poly_to_string(const Poly& a) {
    std::string out = "[";
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(a.coeffs[i]);
    }
    out += ']';
    return out;
}

/// Human form, e.g. "x^4+x+1"; coefficients print as indices in [0, q).
inline std::string poly_to_human(const Poly& a) {
    if (poly_is_zero(a)) return "0";
    std::string out;
    for (std::size_t i = a.coeffs.size(); i-- > 0;) {
        Felt c = a.coeffs[i];
        if (c == 0) continue;
        if (!out.empty()) out += '+';
        if (i == 0) {
            out += std::to_string(c);
        } else {
            if (c != 1) {
                out += std::to_string(c);
                out += '*';
            }
            out += 'x';
            if (i > 1) {
                out += '^';
                out += std::to_string(i);
            }
        }
    }
    return out;
}

namespace detail {

inline std::uint64_t parse_uint(const std::string& s, std::size_t& i) {
    if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i]))) throw parse_error("expected a number in polynomial");
    std::uint64_t v = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
        v = v * 10 + static_cast<std::uint64_t>(s[i] - '0');
        if (v > (std::uint64_t{1} << 62)) throw parse_error("number too large in polynomial");
        ++i;
    }
    return v;
}

}  // namespace detail

/// Accepts both text forms: "[1,1,0,0,1]" and "x^4+x+1" (variable letter x
/// or y; '-' negates the following term; coefficients are element indices).
inline Poly poly_parse(const BaseField& F, const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw parse_error("empty polynomial");

    Poly out;
    auto put = [&](std::uint64_t pow, Felt coeff, bool negate) {
        if (pow > 4096) throw parse_error("polynomial exponent too large");
        if (out.coeffs.size() <= pow) out.coeffs.resize(pow + 1, 0);
        if (negate) coeff = F.neg(coeff);
        out.coeffs[pow] = F.add(out.coeffs[pow], coeff);
    };

    if (s.front() == '[') {
        if (s.back() != ']') throw parse_error("unterminated coefficient list");
        std::size_t i = 1;
        std::uint64_t pow = 0;
        if (s.size() > 2) {
            while (true) {
                std::uint64_t v = detail::parse_uint(s, i);
                if (v >= F.q()) throw parse_error("coefficient out of range [0, q)");
                put(pow++, static_cast<Felt>(v), false);
                if (i < s.size() && s[i] == ',') {
                    ++i;
                    continue;
                }
                break;
            }
        } else {
            i = s.size() - 1;
        }
        if (i != s.size() - 1) throw parse_error("trailing characters in coefficient list");
        poly_trim(out);
        return out;
    }

    std::size_t i = 0;
    bool negate = false;
    if (s[i] == '+' || s[i] == '-') {
        negate = s[i] == '-';
        ++i;
    }
    while (i < s.size()) {
        std::uint64_t coeff = 1;
        bool saw_coeff = false;
        if (std::isdigit(static_cast<unsigned char>(s[i]))) {
            coeff = detail::parse_uint(s, i);
            if (coeff >= F.q()) throw parse_error("coefficient out of range [0, q)");
            saw_coeff = true;
            if (i < s.size() && s[i] == '*') ++i;
        }
        std::uint64_t pow = 0;
        if (i < s.size() && (s[i] == 'x' || s[i] == 'y')) {
            ++i;
            pow = 1;
            if (i < s.size() && s[i] == '^') {
                ++i;
                pow = detail::parse_uint(s, i);
            }
        } else if (!saw_coeff) {
            throw parse_error("expected a term in polynomial");
        }
        put(pow, static_cast<Felt>(coeff), negate);
        if (i == s.size()) break;
        if (s[i] == '+') {
            negate = false;
        } else if (s[i] == '-') {
            negate = true;
        } else {
            throw parse_error("unexpected character in polynomial");
        }
        ++i;
        if (i == s.size()) throw parse_error("dangling sign in polynomial");
    }
    poly_trim(out);
    return out;
}

}  // namespace cayleyff
