#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bigint.hpp"
#include "cayley_graph.hpp"
#include "errors.hpp"
#include "ext_field.hpp"
#include "factorization.hpp"

namespace cayleyff {

namespace detail {

inline void check_group_order(const ExtField& K, const Factorization& fact) {
    if (fact_value(fact) != K.N()) throw bad_hint("factorization does not multiply to q^n - 1");
}

}  // namespace detail

/// Exact multiplicative order: start from N and strip every prime while the
/// power still fixes the identity.
inline Bigint element_order(const ExtField& K, const Xelt& a, const Factorization& fact) {
    if (K.is_zero(a)) throw zero_element("order of zero is undefined");
    detail::check_group_order(K, fact);
    Bigint t = K.N();
    for (const auto& [p, k] : fact.factors) {
        for (std::uint32_t i = 0; i < k; ++i) {
            if (t % p != 0) break;
            if (K.x_pow(a, t / p) == K.one()) {
                t /= p;
            } else {
                break;
            }
        }
    }
    return t;
}

/// n < q^(d/2) + 1, the regime where connectivity is forced; evaluated
/// exactly as (n-1)^2 < q^d.
inline bool connected_regime(const BaseField& base, std::uint32_t n, std::uint32_t d) {
    Bigint lhs = Bigint(n - 1) * (n - 1);
    return lhs < pow_int(Bigint(base.q()), d);
}

struct DescentResult {
    Bigint index;
    std::vector<Bigint> witness_chain;  // primes in the order they were absorbed
};

/// Factorization-driven component count: grow the index I through maximal
/// subgroups while every generator satisfies g(alpha)^(N/(I*p)) = 1. Primes
/// are tried smallest-first each round, so the witness chain is canonical.
/// The forced-connected fast path returns immediately unless force_full.
inline DescentResult components_descent(const GraphSpec& spec, const Factorization& fact, bool force_full = false) {
    const ExtField& K = spec.ext;
    detail::check_group_order(K, fact);
    DescentResult out;
    out.index = 1;
    if (!force_full && connected_regime(K.base(), K.n(), spec.d)) return out;

    ConnectionSet cs = connection_set(spec);
    std::vector<std::pair<Bigint, std::uint32_t>> remaining = fact.factors;
    const Bigint& N = K.N();
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& [p, mult] : remaining) {
            if (mult == 0) continue;
            Bigint step = out.index * p;
            if (N % step != 0) throw internal_error("descent exponent does not divide the group order");
            Bigint e = N / step;
            bool all_fixed = true;
            for (const ConnectionElement& g : cs.elements) {
                if (K.x_pow(g.value, e) != K.one()) {
                    all_fixed = false;
                    break;
                }
            }
            if (all_fixed) {
                out.index = step;
                --mult;
                out.witness_chain.push_back(p);
                progress = true;
                break;  // restart the scan from the smallest prime
            }
        }
    }
    return out;
}

/// Independent method: in a cyclic group |<E_d>| = lcm of generator orders,
/// so the component count is N divided by that lcm.
inline Bigint components_order_lcm(const GraphSpec& spec, const Factorization& fact) {
    const ExtField& K = spec.ext;
    detail::check_group_order(K, fact);
    ConnectionSet cs = connection_set(spec);
    Bigint l = 1;
    for (const ConnectionElement& g : cs.elements) l = lcm(l, element_order(K, g.value, fact));
    if (K.N() % l != 0) throw internal_error("generator order lcm does not divide the group order");
    return K.N() / l;
}

/// Combinatorial upper bound on the component count:
/// floor((q^n - 1) / C(|P_d| + 1, ceil(n/d) - 1)). When the binomial
/// vanishes the bound degenerates to the vacuous q^n - 1.
inline Bigint theorem14_bound(const BaseField& base, std::uint32_t n, std::uint32_t d) {
    if (d == 0 || d >= n) throw degree_mismatch("connection degree must satisfy 1 <= d < n");
    Bigint N = pow_int(Bigint(base.q()), n) - 1;
    std::uint64_t r = (n + d - 1) / d;  // ceil(n/d)
    Bigint choose = binomial_big(count_primary(base, d) + 1, r - 1);
    if (choose < 1) return N;
    return N / choose;
}

inline Bigint theorem14_bound(const GraphSpec& spec) {
    return theorem14_bound(spec.ext.base(), spec.ext.n(), spec.d);
}

}  // namespace cayleyff
