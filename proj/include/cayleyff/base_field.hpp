#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "errors.hpp"
#include "primes.hpp"

namespace cayleyff {

/// A base-field element, encoded as its index in [0, q): base-p digit packing
/// of the coefficient vector over F_p (digit i = coefficient of y^i).
using Felt = std::uint32_t;

namespace detail {

/// Dense F_p coefficient vectors, ascending powers, used only for modulus
/// bookkeeping inside BaseField (full Poly arithmetic lives elsewhere).
inline void fp_trim(std::vector<Felt>& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::vector<Felt> fp_rem(std::vector<Felt> a, const std::vector<Felt>& b, std::uint64_t p) {
    assert(!b.empty() && b.back() != 0);
    std::uint64_t lead_inv = powmod_u64(b.back(), p - 2, p);
    while (a.size() >= b.size()) {
        std::uint64_t c = mulmod_u64(a.back(), lead_inv, p);
        std::size_t shift = a.size() - b.size();
        for (std::size_t i = 0; i < b.size(); ++i) {
            std::uint64_t sub = mulmod_u64(c, b[i], p);
            a[shift + i] = static_cast<Felt>((a[shift + i] + p - sub) % p);
        }
        fp_trim(a);
        if (a.empty()) break;
    }
    return a;
}

inline std::vector<Felt> fp_mul(const std::vector<Felt>& a, const std::vector<Felt>& b, std::uint64_t p) {
    if (a.empty() || b.empty()) return {};
    std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) acc[i + j] = (acc[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    std::vector<Felt> out(acc.begin(), acc.end());
    fp_trim(out);
    return out;
}

/// Trial division by every monic polynomial of degree ≤ deg/2. Only used to
/// validate or auto-pick the base-field modulus, where p^(m/2) is tiny.
inline bool fp_irreducible(const std::vector<Felt>& g, std::uint64_t p) {
    std::uint32_t deg = static_cast<std::uint32_t>(g.size()) - 1;
    for (std::uint32_t t = 1; 2 * t <= deg; ++t) {
        std::uint64_t span = 1;
        for (std::uint32_t i = 0; i < t; ++i) span *= p;
        for (std::uint64_t code = 0; code < span; ++code) {
            std::vector<Felt> h(t + 1);
            std::uint64_t rest = code;
            for (std::uint32_t i = 0; i < t; ++i) {
                h[i] = static_cast<Felt>(rest % p);
                rest /= p;
            }
            h[t] = 1;
            if (fp_rem(g, h, p).empty()) return false;
        }
    }
    return true;
}

}  // namespace detail

/// F_q with q = p^m. Immutable after construction; cheap to copy (operation
/// tables are shared). Elements are Felt indices, see above.
class BaseField {
public:
    BaseField(std::uint64_t p, std::uint32_t m, std::optional<std::vector<Felt>> modulus = std::nullopt)
        : p_(p), m_(m) {
        if (!is_prime_u64(p)) throw not_prime(p);
        if (m == 0) throw degree_mismatch("extension degree m must be >= 1");
        q_ = 1;
        for (std::uint32_t i = 0; i < m; ++i) {
            if (q_ > (std::uint64_t{1} << 31) / p) throw size_guard("q = p^m exceeds the machine-word guard");
            q_ *= p;
        }
        if (m_ == 1) {
            if (modulus && !(modulus->size() == 2 && modulus->back() == 1))
                throw degree_mismatch("prime field takes no modulus");
        } else if (modulus) {
            if (modulus->size() != m_ + 1) throw degree_mismatch("modulus degree != m");
            if (modulus->back() != 1) throw not_monic("base-field modulus");
            for (Felt c : *modulus)
                if (c >= p_) throw parse_error("modulus coefficient out of range [0, p)");
            if (!detail::fp_irreducible(*modulus, p_)) throw reducible_modulus("base-field modulus");
            modulus_ = std::move(*modulus);
        } else {
            modulus_ = pick_modulus();
        }
        if (m_ > 1 && q_ <= kTableLimit) build_tables();
    }

    std::uint64_t p() const { return p_; }
    std::uint32_t m() const { return m_; }
    std::uint64_t q() const { return q_; }

    /// Monic irreducible defining F_p[y]/(modulus); empty for prime fields.
    const std::vector<Felt>& modulus() const { return modulus_; }

    Felt zero() const { return 0; }
    Felt one() const { return 1; }

    Felt add(Felt a, Felt b) const {
        assert(a < q_ && b < q_);
        if (m_ == 1) return static_cast<Felt>((static_cast<std::uint64_t>(a) + b) % p_);
        if (tables_) return tables_->add[static_cast<std::size_t>(a) * q_ + b];
        return zip_digits(a, b, false);
    }

    Felt sub(Felt a, Felt b) const {
        assert(a < q_ && b < q_);
        if (m_ == 1) return static_cast<Felt>((static_cast<std::uint64_t>(a) + p_ - b) % p_);
        if (tables_) return tables_->add[static_cast<std::size_t>(a) * q_ + neg(b)];
        return zip_digits(a, b, true);
    }

    Felt neg(Felt a) const {
        assert(a < q_);
        if (m_ == 1) return a == 0 ? 0 : static_cast<Felt>(p_ - a);
        Felt out = 0;
        std::uint64_t place = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            std::uint64_t da = a % p_;
            a = static_cast<Felt>(a / p_);
            out += static_cast<Felt>(((p_ - da) % p_) * place);
            place *= p_;
        }
        return out;
    }

    Felt mul(Felt a, Felt b) const {
        assert(a < q_ && b < q_);
        if (m_ == 1) return static_cast<Felt>(mulmod_u64(a, b, p_));
        if (tables_) return tables_->mul[static_cast<std::size_t>(a) * q_ + b];
        return mul_digits(a, b);
    }

    Felt inv(Felt a) const {
        if (a == 0) throw division_by_zero();
        if (m_ == 1) return static_cast<Felt>(powmod_u64(a, p_ - 2, p_));
        if (tables_) return tables_->inv[a];
        return pow(a, q_ - 2);
    }

    Felt div(Felt a, Felt b) const { return mul(a, inv(b)); }

    Felt pow(Felt a, std::uint64_t e) const {
        if (a == 0) {
            if (e == 0) throw division_by_zero();
            return 0;
        }
        Felt r = 1;
        while (e) {
            if (e & 1) r = mul(r, a);
            a = mul(a, a);
            e >>= 1;
        }
        return r;
    }

    /// Base-p digits of an element, length m (coefficient of y^i at slot i).
    std::vector<Felt> digits(Felt a) const {
        assert(a < q_);
        std::vector<Felt> out(m_);
        for (std::uint32_t i = 0; i < m_; ++i) {
            out[i] = static_cast<Felt>(a % p_);
            a = static_cast<Felt>(a / p_);
        }
        return out;
    }

    Felt pack(const std::vector<Felt>& digits) const {
        if (digits.size() > m_) throw parse_error("too many digits for this field");
        Felt out = 0;
        std::uint64_t place = 1;
        for (std::size_t i = 0; i < digits.size(); ++i) {
            if (digits[i] >= p_) throw parse_error("digit out of range [0, p)");
            out += static_cast<Felt>(digits[i] * place);
            place *= p_;
        }
        return out;
    }

    /// Embedding of an ordinary integer via the prime subfield.
    Felt from_int(std::uint64_t v) const { return static_cast<Felt>(v % p_); }

    bool operator==(const BaseField& o) const { return p_ == o.p_ && m_ == o.m_ && modulus_ == o.modulus_; }
    bool operator!=(const BaseField& o) const { return !(*this == o); }

private:
    static constexpr std::uint64_t kTableLimit = 1024;

    struct Tables {
        std::vector<Felt> add;
        std::vector<Felt> mul;
        std::vector<Felt> inv;
    };

    /// First monic irreducible of degree m in ascending code order
    /// (constant term varies fastest), so the choice is reproducible.
    std::vector<Felt> pick_modulus() const {
        for (std::uint64_t code = 0; code < q_; ++code) {
            std::vector<Felt> g(m_ + 1);
            std::uint64_t rest = code;
            for (std::uint32_t i = 0; i < m_; ++i) {
                g[i] = static_cast<Felt>(rest % p_);
                rest /= p_;
            }
            g[m_] = 1;
            if (detail::fp_irreducible(g, p_)) return g;
        }
        throw internal_error("no irreducible modulus found");
    }

    Felt zip_digits(Felt a, Felt b, bool subtract) const {
        Felt out = 0;
        std::uint64_t place = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            std::uint64_t da = a % p_, db = b % p_;
            a = static_cast<Felt>(a / p_);
            b = static_cast<Felt>(b / p_);
            std::uint64_t dc = subtract ? (da + p_ - db) % p_ : (da + db) % p_;
            out += static_cast<Felt>(dc * place);
            place *= p_;
        }
        return out;
    }

    Felt mul_digits(Felt a, Felt b) const {
        std::vector<Felt> prod = detail::fp_mul(digits(a), digits(b), p_);
        prod = detail::fp_rem(std::move(prod), modulus_, p_);
        prod.resize(m_, 0);
        Felt out = 0;
        std::uint64_t place = 1;
        for (std::uint32_t i = 0; i < m_; ++i) {
            out += static_cast<Felt>(prod[i] * place);
            place *= p_;
        }
        return out;
    }

    void build_tables() {
        auto t = std::make_shared<Tables>();
        t->add.resize(q_ * q_);
        t->mul.resize(q_ * q_);
        for (Felt a = 0; a < q_; ++a)
            for (Felt b = 0; b < q_; ++b) {
                t->add[static_cast<std::size_t>(a) * q_ + b] = zip_digits(a, b, false);
                t->mul[static_cast<std::size_t>(a) * q_ + b] = mul_digits(a, b);
            }
        t->inv.resize(q_, 0);
        for (Felt a = 1; a < q_; ++a)
            for (Felt b = 1; b < q_; ++b)
                if (t->mul[static_cast<std::size_t>(a) * q_ + b] == 1) {
                    t->inv[a] = b;
                    break;
                }
        tables_ = std::move(t);
    }

    std::uint64_t p_;
    std::uint32_t m_;
    std::uint64_t q_;
    std::vector<Felt> modulus_;
    std::shared_ptr<const Tables> tables_;
};

inline BaseField base_field_new(std::uint64_t p, std::uint32_t m,
                                std::optional<std::vector<Felt>> modulus = std::nullopt) {
    return BaseField(p, m, std::move(modulus));
}

}  // namespace cayleyff
