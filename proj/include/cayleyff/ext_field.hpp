#pragma once

#include <cassert>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "base_field.hpp"
#include "bigint.hpp"
#include "errors.hpp"
#include "poly.hpp"
#include "poly_enum.hpp"

namespace cayleyff {

/// Element of F_{q^n} = F_q[x]/(f): exactly n coefficients, slot i holds the
/// coefficient of alpha^i. The zero vector is not a unit-group member.
struct Xelt {
    std::vector<Felt> coeffs;

    bool operator==(const Xelt&) const = default;
};

/// F_q[x]/(f) with f monic irreducible of degree n > 1. Immutable and
/// shareable; all operations are pure. Group order N = q^n - 1 is exact.
class ExtField {
public:
    ExtField(BaseField base, Poly f, bool force = false) : base_(std::move(base)), f_(std::move(f)) {
        if (poly_is_zero(f_)) throw zero_polynomial();
        if (!poly_is_monic(f_)) throw not_monic(poly_to_string(f_));
        if (poly_degree(f_) <= 1) throw degree_too_small(poly_to_string(f_));
        for (Felt c : f_.coeffs)
            if (c >= base_.q()) throw parse_error("modulus coefficient out of range [0, q)");
        if (!is_irreducible(base_, f_)) throw reducible_modulus(poly_to_string(f_));
        n_ = static_cast<std::uint32_t>(poly_degree(f_));
        N_ = pow_int(Bigint(base_.q()), n_) - 1;
        if (!force && N_ > kSizeGuardLimit) throw size_guard("N = q^n - 1 exceeds the size guard (pass force to override)");

        // Rows x^(n+k) mod f for k = 0..n-2, so products reduce by lookup.
        std::vector<Felt> xn(n_ + 1, 0);
        xn[n_] = 1;
        Poly t = poly_rem(base_, Poly{std::move(xn)}, f_);
        for (std::uint32_t k = 0; k + 1 < n_; ++k) {
            std::vector<Felt> row = t.coeffs;
            row.resize(n_, 0);
            reduction_.push_back(std::move(row));
            t = poly_rem(base_, poly_mul(base_, t, poly_x()), f_);
        }
    }

    const BaseField& base() const { return base_; }
    const Poly& f() const { return f_; }
    std::uint32_t n() const { return n_; }
    const Bigint& N() const { return N_; }

    Xelt zero() const { return Xelt{std::vector<Felt>(n_, 0)}; }

    Xelt one() const {
        Xelt a = zero();
        a.coeffs[0] = 1;
        return a;
    }

    /// The residue of x, written alpha throughout.
    Xelt alpha() const {
        Xelt a = zero();
        a.coeffs[1] = 1;
        return a;
    }

    Xelt from_felt(Felt c) const {
        Xelt a = zero();
        a.coeffs[0] = c;
        return a;
    }

    bool is_zero(const Xelt& a) const {
        for (Felt c : a.coeffs)
            if (c != 0) return false;
        return true;
    }

    Xelt x_add(const Xelt& a, const Xelt& b) const {
        check(a);
        check(b);
        Xelt out = a;
        for (std::uint32_t i = 0; i < n_; ++i) out.coeffs[i] = base_.add(a.coeffs[i], b.coeffs[i]);
        return out;
    }

    Xelt x_sub(const Xelt& a, const Xelt& b) const {
        check(a);
        check(b);
        Xelt out = a;
        for (std::uint32_t i = 0; i < n_; ++i) out.coeffs[i] = base_.sub(a.coeffs[i], b.coeffs[i]);
        return out;
    }

    Xelt x_neg(const Xelt& a) const {
        check(a);
        Xelt out = a;
        for (Felt& c : out.coeffs) c = base_.neg(c);
        return out;
    }

    Xelt x_mul(const Xelt& a, const Xelt& b) const {
        check(a);
        check(b);
        std::vector<Felt> prod(2 * n_ - 1, 0);
        for (std::uint32_t i = 0; i < n_; ++i) {
            if (a.coeffs[i] == 0) continue;
            for (std::uint32_t j = 0; j < n_; ++j)
                prod[i + j] = base_.add(prod[i + j], base_.mul(a.coeffs[i], b.coeffs[j]));
        }
        Xelt out = zero();
        for (std::uint32_t i = 0; i < n_; ++i) out.coeffs[i] = prod[i];
        for (std::uint32_t k = 0; k + 1 < n_; ++k) {
            Felt hi = prod[n_ + k];
            if (hi == 0) continue;
            const std::vector<Felt>& row = reduction_[k];
            for (std::uint32_t i = 0; i < n_; ++i)
                out.coeffs[i] = base_.add(out.coeffs[i], base_.mul(hi, row[i]));
        }
        return out;
    }

    Xelt x_inv(const Xelt& a) const {
        check(a);
        if (is_zero(a)) throw division_by_zero();
        // Extended Euclid on (a, f): u*a + v*f = 1, so u = a^(-1) mod f.
        Poly r0{a.coeffs}, r1 = f_;
        poly_trim(r0);
        Poly u0 = poly_one(), u1 = poly_zero();
        while (!poly_is_zero(r1)) {
            auto [q, r] = poly_divmod(base_, r0, r1);
            Poly u = poly_sub(base_, u0, poly_mul(base_, q, u1));
            r0 = std::move(r1);
            r1 = std::move(r);
            u0 = std::move(u1);
            u1 = std::move(u);
        }
        assert(poly_degree(r0) == 0);
        Poly inv = poly_scale(base_, u0, base_.inv(r0.coeffs[0]));
        inv = poly_rem(base_, inv, f_);
        inv.coeffs.resize(n_, 0);
        return Xelt{std::move(inv.coeffs)};
    }

    Xelt x_div(const Xelt& a, const Xelt& b) const { return x_mul(a, x_inv(b)); }

    /// a^e by square-and-multiply; a^0 = 1 for a != 0, 0^0 is an error.
    Xelt x_pow(const Xelt& a, Bigint e) const {
        check(a);
        if (e < 0) throw parse_error("negative exponent");
        if (is_zero(a)) {
            if (e == 0) throw division_by_zero();
            return zero();
        }
        Xelt r = one();
        Xelt base = a;
        while (e > 0) {
            if ((e & 1) != 0) r = x_mul(r, base);
            e >>= 1;
            if (e > 0) base = x_mul(base, base);
        }
        return r;
    }

    Xelt x_pow(const Xelt& a, std::uint64_t e) const { return x_pow(a, Bigint(e)); }

    /// Frobenius a -> a^q.
    Xelt frobenius(const Xelt& a) const { return is_zero(a) ? a : x_pow(a, Bigint(base_.q())); }

    /// Smallest k | n with a^(q^k) = a; n iff a lies in no proper subfield.
    /// By convention the degree of 0 is 1.
    std::uint32_t element_degree(const Xelt& a) const {
        check(a);
        Xelt t = a;
        for (std::uint32_t k = 1; k <= n_; ++k) {
            t = frobenius(t);
            if (n_ % k == 0 && t == a) return k;
        }
        throw internal_error("Frobenius orbit did not close");
    }

    /// Evaluate a polynomial over F_q at an extension element (Horner).
    Xelt x_eval(const Poly& g, const Xelt& at) const {
        check(at);
        Xelt acc = zero();
        for (std::size_t i = g.coeffs.size(); i-- > 0;) {
            acc = x_mul(acc, at);
            acc.coeffs[0] = base_.add(acc.coeffs[0], g.coeffs[i]);
        }
        return acc;
    }

    /// Radix-q packing of the coefficient vector; 0 is the zero element.
    /// Only valid while q^n fits a machine word (guarded sizes always do).
    std::uint64_t to_index(const Xelt& a) const {
        check(a);
        std::uint64_t idx = 0;
        for (std::size_t i = a.coeffs.size(); i-- > 0;) idx = idx * base_.q() + a.coeffs[i];
        return idx;
    }

    Xelt from_index(std::uint64_t idx) const {
        Xelt a = zero();
        for (std::uint32_t i = 0; i < n_; ++i) {
            a.coeffs[i] = static_cast<Felt>(idx % base_.q());
            idx /= base_.q();
        }
        if (idx != 0) throw parse_error("vertex index out of range");
        return a;
    }

    std::string to_string(const Xelt& a) const {
        check(a);
        return poly_to_string(Poly{a.coeffs});
    }

    bool operator==(const ExtField& o) const { return base_ == o.base_ && f_ == o.f_; }
    bool operator!=(const ExtField& o) const { return !(*this == o); }

private:
    void check(const Xelt& a) const {
        if (a.coeffs.size() != n_) throw field_mismatch();
    }

    BaseField base_;
    Poly f_;
    std::uint32_t n_ = 0;
    Bigint N_;
    std::vector<std::vector<Felt>> reduction_;
};

inline ExtField ext_field_new(BaseField base, Poly f, bool force = false) {
    return ExtField(std::move(base), std::move(f), force);
}

}  // namespace cayleyff
