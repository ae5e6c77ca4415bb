#include <catch2/catch_amalgamated.hpp>

#include <cayleyff/comp_algebraic.hpp>
#include <cayleyff/poly_enum.hpp>

#include "oracles.hpp"

using namespace cayleyff;

namespace {

Bigint order_brute(const ExtField& K, const Xelt& a) {
    Xelt t = a;
    Bigint k = 1;
    while (!(t == K.one())) {
        t = K.x_mul(t, a);
        ++k;
    }
    return k;
}

}  // namespace

TEST_CASE("element orders in F_9", "[comp_algebraic]") {
    ExtField K(BaseField(3, 1), Poly{{1, 0, 1}});
    Factorization fact = factor(K.N());
    CHECK(element_order(K, K.alpha(), fact) == 4);  // alpha^2 = -1
    CHECK(element_order(K, K.one(), fact) == 1);
    CHECK_THROWS_AS(element_order(K, K.zero(), fact), InputError);
    for (std::uint64_t v = 1; v <= 8; ++v) {
        Xelt a = K.from_index(v);
        CHECK(element_order(K, a, fact) == order_brute(K, a));
    }
}

TEST_CASE("element orders divide the group order", "[comp_algebraic]") {
    ExtField K(BaseField(3, 1), first_irreducible(BaseField(3, 1), 3));
    Factorization fact = factor(K.N());
    Bigint found_generator = 0;
    for (std::uint64_t v = 1; v <= 26; ++v) {
        Bigint ord = element_order(K, K.from_index(v), fact);
        CHECK(K.N() % ord == 0);
        CHECK(ord == order_brute(K, K.from_index(v)));
        if (ord == K.N()) ++found_generator;
    }
    // phi(26) = 12 primitive elements
    CHECK(found_generator == 12);
}

TEST_CASE("group order must match the factorization", "[comp_algebraic]") {
    ExtField K(BaseField(3, 1), Poly{{1, 0, 1}});
    CHECK_THROWS_AS(element_order(K, K.alpha(), parse_factorization("3 * 5")), InputError);
}

TEST_CASE("the forced-connected regime test is exact at its boundary", "[comp_algebraic]") {
    // (n-1)^2 < q^d, never through floating point
    CHECK(connected_regime(BaseField(2, 2), 4, 2));         // 9 < 16
    CHECK_FALSE(connected_regime(BaseField(2, 2), 5, 2));   // 16 < 16 fails
    CHECK(connected_regime(BaseField(2, 1), 3, 3));         // 4 < 8
    CHECK_FALSE(connected_regime(BaseField(2, 1), 3, 2));   // 4 < 4 fails
    CHECK(connected_regime(BaseField(3, 2), 3, 1));         // 4 < 9
    CHECK_FALSE(connected_regime(BaseField(3, 2), 4, 1));   // 9 < 9 fails
    CHECK(connected_regime(BaseField(5, 1), 4, 2));         // 9 < 25
}

TEST_CASE("descent agrees with closure on every small instance", "[comp_algebraic]") {
    for (std::uint64_t p : {2ull, 3ull}) {
        BaseField F(p, 1);
        for (std::uint32_t n = 3; n <= (p == 2 ? 8u : 5u); ++n) {
            Factorization fact = factor(pow_int(Bigint(p), n) - 1);
            for (Poly& f : enumerate_irreducibles(F, n)) {
                ExtField K(F, f);
                for (std::uint32_t d = 1; d < n && d <= 2; ++d) {
                    GraphSpec spec(K, d);
                    DescentResult dr = components_descent(spec, fact, true);
                    CHECK(dr.index == subgroup_closure(spec).index);
                    CHECK(dr.index == components_order_lcm(spec, fact));

                    Bigint chain_product = 1;
                    for (const Bigint& w : dr.witness_chain) {
                        CHECK(is_prime_big(w));
                        chain_product *= w;
                    }
                    CHECK(chain_product == dr.index);
                    CHECK(K.N() % dr.index == 0);
                }
            }
        }
    }
}

TEST_CASE("descent fast path matches the full run in the forced regime", "[comp_algebraic]") {
    BaseField F(3, 2);
    ExtField K(F, first_irreducible(F, 3));
    GraphSpec spec(K, 1);  // 9 > (3-1)^2, forced connected
    Factorization fact = factor(K.N());
    CHECK(components_descent(spec, fact).index == 1);
    CHECK(components_descent(spec, fact).witness_chain.empty());
    CHECK(components_descent(spec, fact, true).index == 1);
}

TEST_CASE("an explicit disconnected instance and its witness chain", "[comp_algebraic]") {
    // x^3+2x+2 over F_3: N = 26 and the connection set generates the index-2 subgroup
    ExtField K(BaseField(3, 1), Poly{{2, 2, 0, 1}});
    GraphSpec spec(K, 1);
    Factorization fact = factor(K.N());
    DescentResult dr = components_descent(spec, fact);
    CHECK(dr.index == 2);
    REQUIRE(dr.witness_chain.size() == 1);
    CHECK(dr.witness_chain[0] == 2);
    CHECK(components_bfs(spec) == 2);
}

TEST_CASE("component bound evaluates the binomial exactly", "[comp_algebraic]") {
    BaseField F2(2, 1);
    CHECK(theorem14_bound(F2, 4, 1) == 15);   // C(3,3) = 1
    CHECK(theorem14_bound(F2, 6, 1) == 63);   // C(3,5) = 0, vacuous
    CHECK(theorem14_bound(BaseField(3, 1), 3, 1) == 4);   // 26 / C(4,2)
    CHECK(theorem14_bound(BaseField(3, 2), 3, 1) == 16);  // 728 / C(10,2)
    CHECK_THROWS_AS(theorem14_bound(F2, 3, 3), InputError);
}

TEST_CASE("component count never exceeds the bound", "[comp_algebraic]") {
    BaseField F(2, 1);
    for (std::uint32_t n = 3; n <= 9; ++n) {
        Factorization fact = factor(pow_int(Bigint(2), n) - 1);
        Bigint bound = theorem14_bound(F, n, 1);
        for (Poly& f : enumerate_irreducibles(F, n)) {
            GraphSpec spec(ExtField(F, f), 1);
            CHECK(components_descent(spec, fact, true).index <= bound);
        }
    }
}
