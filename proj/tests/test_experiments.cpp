#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <cayleyff/experiments.hpp>

#include "oracles.hpp"

using namespace cayleyff;

namespace {

ExtField ext_of(std::uint64_t p, std::uint32_t m, std::uint32_t n) {
    BaseField F(p, m);
    return ExtField(F, first_irreducible(F, n));
}

}  // namespace

TEST_CASE("diameter bound values", "[experiments]") {
    SECTION("n = 2 kills the logarithmic term") {
        DiameterBound b = diameter_bound(BaseField(7, 1), 2, 1);
        CHECK(b.bound == 5.0);
        CHECK(b.proof_threshold == 4.0);
        CHECK(b.cor16_applies);  // 7 > 1^10
    }
    SECTION("(q,n,d) = (5,4,2)") {
        DiameterBound b = diameter_bound(BaseField(5, 1), 4, 2);
        CHECK_THAT(b.bound, Catch::Matchers::WithinAbs(13.602640412348498, 1e-9));
        CHECK_THAT(b.proof_threshold, Catch::Matchers::WithinAbs(12.602640412348496, 1e-9));
        CHECK_FALSE(b.cor16_applies);  // 5^4 = 625 < 3^20
    }
    SECTION("huge q sets cor16_applies") {
        DiameterBound b = diameter_bound(BaseField(2, 10), 2, 1);
        CHECK(b.cor16_applies);
        CHECK(b.bound == 5.0);
    }
    SECTION("outside the forced-connected regime") {
        CHECK_THROWS_MATCHES(diameter_bound(BaseField(2, 1), 12, 1), InputError,
                             Catch::Matchers::Predicate<InputError>(
                                 [](const InputError& e) { return e.code() == "NotApplicable"; }));
    }
    SECTION("the GraphSpec overload delegates") {
        GraphSpec spec(ext_of(5, 1, 4), 2);
        CHECK(diameter_bound(spec).bound == diameter_bound(BaseField(5, 1), 4, 2).bound);
    }
}

TEST_CASE("verify_diameter measures against the bound", "[experiments]") {
    SECTION("(q,n,d) = (5,4,2), f = x^4 + 2") {
        GraphSpec spec(ExtField(BaseField(5, 1), Poly{{2, 0, 0, 0, 1}}), 2);
        DiameterVerification v = verify_diameter(spec, factor(spec.ext.N()));
        CHECK(v.actual == 4);
        CHECK_THAT(v.bound, Catch::Matchers::WithinAbs(13.602640412348498, 1e-9));
        CHECK(v.ok);
    }
    SECTION("(q,n,d) = (4,3,2) agrees with the all-pairs oracle") {
        GraphSpec spec(ext_of(2, 2, 3), 2);
        DiameterVerification v = verify_diameter(spec, factor(spec.ext.N()));
        std::optional<std::uint32_t> ref = oracle::diameter_all_pairs(oracle::adjacency(spec));
        REQUIRE(ref.has_value());
        CHECK(v.actual == *ref);
        CHECK(v.ok);
    }
}

TEST_CASE("count_products at k = 1 is the connection-set indicator", "[experiments]") {
    GraphSpec spec(ext_of(3, 1, 2), 1);
    std::vector<std::uint64_t> counts = count_products(spec, 1);
    ConnectionSet cs = connection_set(spec);
    std::set<std::uint64_t> members;
    for (const ConnectionElement& e : cs.elements) members.insert(spec.ext.to_index(e.value));
    REQUIRE(counts.size() == 9);
    CHECK(counts[0] == 0);
    for (std::uint64_t v = 1; v < counts.size(); ++v) CHECK(counts[v] == (members.count(v) ? 1 : 0));
}

TEST_CASE("count_products matches brute-force tuple enumeration", "[experiments]") {
    struct Row {
        GraphSpec spec;
        std::uint32_t max_k;
    };
    std::vector<Row> rows = {
        {GraphSpec(ext_of(3, 1, 2), 1), 3},
        {GraphSpec(ext_of(2, 1, 4), 2), 3},
        {GraphSpec(ext_of(2, 1, 3), 1), 4},
    };
    for (const Row& row : rows) {
        std::uint64_t degree = connection_set(row.spec).size();
        for (std::uint32_t k = 1; k <= row.max_k; ++k) {
            std::vector<std::uint64_t> counts = count_products(row.spec, k);
            std::map<std::uint64_t, std::uint64_t> ref = oracle::product_counts_brute(row.spec, k);
            std::uint64_t total = 0;
            for (std::uint64_t v = 0; v < counts.size(); ++v) {
                auto it = ref.find(v);
                CHECK(counts[v] == (it == ref.end() ? 0 : it->second));
                total += counts[v];
            }
            // ordered tuples partition by their product
            Bigint expected = pow_int(Bigint(degree), k);
            CHECK(Bigint(total) == expected);
        }
    }
}

TEST_CASE("count_products zero tally at (q,n,d) = (5,3,2)", "[experiments]") {
    GraphSpec spec(ext_of(5, 1, 3), 2);
    std::vector<std::uint64_t> expected_zeros = {109, 38, 0};
    for (std::uint32_t k = 1; k <= 3; ++k) {
        std::vector<std::uint64_t> counts = count_products(spec, k);
        std::uint64_t zeros = 0, total = 0;
        for (std::uint64_t v = 1; v < counts.size(); ++v) {
            if (counts[v] == 0) ++zeros;
            total += counts[v];
        }
        CHECK(zeros == expected_zeros[k - 1]);
        CHECK(Bigint(total) == pow_int(Bigint(15), k));  // |P_2(F_5)| = 15
    }
}

TEST_CASE("count_products guards", "[experiments]") {
    GraphSpec spec(ext_of(2, 1, 4), 1);
    CHECK_THROWS_AS(count_products(spec, 0), InputError);
    CHECK_THROWS_MATCHES(count_products(spec, 300000000u), InputError,
                         Catch::Matchers::Predicate<InputError>(
                             [](const InputError& e) { return e.code() == "BudgetExceeded"; }));
}

TEST_CASE("divisibility hypothesis is decided exactly", "[experiments]") {
    BaseField F2(2, 1);
    // 2^(n-2) against 3^6 = 729: first true at n = 12
    CHECK_FALSE(detail::divisibility_hypothesis(F2, 11, 1, Bigint(3)));
    CHECK(detail::divisibility_hypothesis(F2, 12, 1, Bigint(3)));
    // n < 2d is rejected outright
    CHECK_FALSE(detail::divisibility_hypothesis(F2, 3, 2, Bigint(3)));
}

TEST_CASE("search_disconnected over all degree-12 binary fields", "[experiments]") {
    SearchResult res = search_disconnected(BaseField(2, 1), 12, 1, Bigint(3));
    CHECK(res.hypothesis_holds);
    CHECK(res.scanned == 335);
    REQUIRE(res.hits.size() == 35);
    for (const auto& [f, count] : res.hits) {
        CHECK(poly_degree(f) == 12);
        CHECK(count % 3 == 0);
    }

    // spot-check one hit against plain BFS
    GraphSpec spec(ExtField(BaseField(2, 1), res.hits.front().first), 1);
    CHECK(components_bfs(spec) == res.hits.front().second);

    // each hit field contributes exactly n = 12 elements to N_ell
    Bigint n_ell = count_N_ell(BaseField(2, 1), 12, 1, Bigint(3), factor(Bigint(4095)));
    CHECK(n_ell == Bigint(420));
    CHECK(n_ell == Bigint(12) * res.hits.size());
}

TEST_CASE("search_disconnected on a forced-connected cell finds nothing", "[experiments]") {
    SearchResult res = search_disconnected(BaseField(3, 1), 2, 1, Bigint(2));
    CHECK_FALSE(res.hypothesis_holds);
    CHECK(res.scanned == 3);  // pi_2(3)
    CHECK(res.hits.empty());
}

TEST_CASE("search_disconnected input guards", "[experiments]") {
    BaseField F2(2, 1);
    CHECK_THROWS_MATCHES(search_disconnected(F2, 4, 1, Bigint(4)), InputError,
                         Catch::Matchers::Predicate<InputError>(
                             [](const InputError& e) { return e.code() == "EllDoesNotDivide"; }));
    CHECK_THROWS_AS(search_disconnected(F2, 4, 1, Bigint(1)), InputError);
    CHECK_THROWS_AS(search_disconnected(F2, 4, 0, Bigint(3)), InputError);
    CHECK_THROWS_AS(search_disconnected(F2, 4, 4, Bigint(3)), InputError);
}

TEST_CASE("count_N_ell identities", "[experiments]") {
    BaseField F2(2, 1);
    Factorization f63 = factor(Bigint(63));
    // ell = 1 imposes nothing, so the count is all degree-6 elements
    CHECK(count_N_ell(F2, 6, 1, Bigint(1), f63) == Bigint(6) * count_irreducibles(F2, 6));
    // ell = N demands every evaluation equal 1, impossible for alpha of full degree
    CHECK(count_N_ell(F2, 6, 1, Bigint(63), f63) == Bigint(0));
    CHECK_THROWS_AS(count_N_ell(F2, 6, 1, Bigint(5), f63), InputError);
}

TEST_CASE("connectivity census over all degree-12 binary fields", "[experiments]") {
    CensusResult res = connectivity_census(BaseField(2, 1), 12, 1);
    CHECK(res.fields_total == Bigint(335));
    CHECK_FALSE(res.all_connected);
    std::map<std::uint64_t, Bigint> expected = {{1, Bigint(285)}, {3, Bigint(33)}, {5, Bigint(9)},
                                                {7, Bigint(6)},   {15, Bigint(2)}};
    CHECK(res.field_histogram == expected);
    CHECK(res.field_modulus == first_irreducible(BaseField(2, 1), 12));
}

TEST_CASE("census agrees with a per-field descent scan", "[experiments]") {
    struct Cell {
        std::uint64_t p;
        std::uint32_t m, n, d;
    };
    for (const Cell& cell : {Cell{3, 1, 4, 1}, Cell{2, 1, 4, 2}, Cell{2, 1, 6, 2}}) {
        BaseField F(cell.p, cell.m);
        CensusResult census = connectivity_census(F, cell.n, cell.d);

        Bigint N = pow_int(Bigint(F.q()), cell.n) - 1;
        Factorization fact = factor(N);
        std::map<std::uint64_t, Bigint> scan;
        for (const Poly& f : enumerate_irreducibles(F, cell.n)) {
            GraphSpec spec(ExtField(F, f), cell.d);
            Bigint idx = components_descent(spec, fact, true).index;
            scan[static_cast<std::uint64_t>(idx)] += 1;
        }
        CHECK(census.field_histogram == scan);
    }
}

TEST_CASE("census on a forced-connected cell", "[experiments]") {
    CensusResult res = connectivity_census(BaseField(3, 1), 2, 1);
    CHECK(res.all_connected);
    CHECK(res.fields_total == Bigint(3));
    REQUIRE(res.field_histogram.size() == 1);
    CHECK(res.field_histogram.at(1) == Bigint(3));
    CHECK_THROWS_AS(connectivity_census(BaseField(3, 1), 2, 0), InputError);
    CHECK_THROWS_AS(connectivity_census(BaseField(3, 1), 2, 2), InputError);
}

TEST_CASE("connectivity sweep over (3, n=3) cells", "[experiments]") {
    BaseField F3(3, 1);
    std::vector<SweepCell> cells = {{3, 1}, {3, 2}};
    SweepReport rep = connectivity_sweep(F3, cells);
    REQUIRE(rep.rows.size() == 16);  // pi_3(3) = 8 per cell
    CHECK(fact_to_string(rep.last_factorization) == "2 * 13");

    for (std::size_t i = 0; i < 8; ++i) {
        const SweepRow& row = rep.rows[i];
        CHECK(row.d == 1);
        CHECK(row.regime == "gap");
        CHECK(row.bound_components == Bigint(4));
        CHECK(row.seconds == 0.0);
        REQUIRE(row.delta_star.has_value());  // N = 26 is under the spectrum limit
    }
    for (std::size_t i = 8; i < 16; ++i) {
        const SweepRow& row = rep.rows[i];
        CHECK(row.d == 2);
        CHECK(row.regime == "forced-connected");
        CHECK(row.components == Bigint(1));
        REQUIRE(row.diameter.has_value());
        REQUIRE(row.diameter_bound_value.has_value());
        CHECK(static_cast<double>(*row.diameter) <= *row.diameter_bound_value);
    }

    // the known split at d = 1: x^3 + 2x + 1 connected, x^3 + 2x + 2 not
    auto find_row = [&](const Poly& f) {
        for (const SweepRow& row : rep.rows)
            if (row.d == 1 && row.f == f) return row;
        throw std::runtime_error("row not found");
    };
    CHECK(find_row(Poly{{1, 2, 0, 1}}).components == Bigint(1));
    CHECK(find_row(Poly{{1, 2, 0, 1}}).diameter == 5);
    CHECK(find_row(Poly{{2, 2, 0, 1}}).components == Bigint(2));
    CHECK_FALSE(find_row(Poly{{2, 2, 0, 1}}).diameter.has_value());
}

TEST_CASE("sweep output is deterministic and job-count independent", "[experiments]") {
    BaseField F3(3, 1);
    std::vector<SweepCell> cells = {{3, 1}, {4, 2}};
    SweepOptions serial;
    SweepOptions parallel;
    parallel.jobs = 4;
    std::string a = sweep_csv(connectivity_sweep(F3, cells, serial));
    std::string b = sweep_csv(connectivity_sweep(F3, cells, serial));
    std::string c = sweep_csv(connectivity_sweep(F3, cells, parallel));
    CHECK(a == b);
    CHECK(a == c);
}

TEST_CASE("sweep timing flag fills the seconds field", "[experiments]") {
    BaseField F3(3, 1);
    SweepOptions opt;
    opt.timing = true;
    SweepReport rep = connectivity_sweep(F3, {{3, 1}}, opt);
    for (const SweepRow& row : rep.rows) CHECK(row.seconds > 0.0);
}

TEST_CASE("sweep option guards", "[experiments]") {
    BaseField F3(3, 1);
    CHECK_THROWS_AS(connectivity_sweep(F3, {{3, 3}}), InputError);
    CHECK_THROWS_AS(connectivity_sweep(F3, {{3, 0}}), InputError);
    SweepOptions bad_ell;
    bad_ell.ell = Bigint(7);  // 7 does not divide 26
    CHECK_THROWS_MATCHES(connectivity_sweep(F3, {{3, 1}}, bad_ell), InputError,
                         Catch::Matchers::Predicate<InputError>(
                             [](const InputError& e) { return e.code() == "EllDoesNotDivide"; }));
    SweepOptions ell13;
    ell13.ell = Bigint(13);
    CHECK(connectivity_sweep(F3, {{3, 1}}, ell13).rows.front().regime == "gap");
}

TEST_CASE("sweep CSV layout", "[experiments]") {
    BaseField F3(3, 1);
    std::string csv = sweep_csv(connectivity_sweep(F3, {{3, 1}}));

    std::istringstream in(csv);
    std::string line;
    REQUIRE(std::getline(in, line));
    CHECK(line == "q,n,d,f,regime,components,thm14_bound,diameter,diameter_bound,delta_star,seconds");
    std::size_t rows = 0;
    while (std::getline(in, line)) {
        CHECK(line.find('\r') == std::string::npos);
        ++rows;
    }
    CHECK(rows == 8);
    // disconnected instance: no diameter, no diameter bound, placeholder seconds
    CHECK(csv.find("3,3,1,\"[2,2,0,1]\",gap,2,4,,,") != std::string::npos);
    CHECK(csv.find(",0.000000\n") != std::string::npos);
}
