#include <catch2/catch_amalgamated.hpp>

#include <set>
#include <sstream>

#include <cayleyff/cayley_graph.hpp>
#include <cayleyff/poly_enum.hpp>

#include "oracles.hpp"

using namespace cayleyff;

namespace {

GraphSpec spec_f9_d1() { return GraphSpec(ExtField(BaseField(3, 1), Poly{{1, 0, 1}}), 1); }
GraphSpec spec_f16(std::uint32_t d) { return GraphSpec(ExtField(BaseField(2, 1), Poly{{1, 1, 0, 0, 1}}), d); }

}  // namespace

TEST_CASE("connection set of F_9 at d=1", "[cayley_graph]") {
    GraphSpec spec = spec_f9_d1();
    ConnectionSet cs = connection_set(spec);
    REQUIRE(cs.size() == 3);
    std::set<std::uint64_t> indices;
    for (const ConnectionElement& e : cs.elements) indices.insert(spec.ext.to_index(e.value));
    // alpha, alpha+1, alpha+2 in radix-3 indexing
    CHECK(indices == std::set<std::uint64_t>{3, 4, 5});
}

TEST_CASE("connection set of F_16 at d=2", "[cayley_graph]") {
    GraphSpec spec = spec_f16(2);
    ConnectionSet cs = connection_set(spec);
    REQUIRE(cs.size() == 3);
    std::set<std::uint64_t> indices;
    for (const ConnectionElement& e : cs.elements) indices.insert(spec.ext.to_index(e.value));
    // alpha^2, alpha^2+1, alpha^2+alpha+1
    CHECK(indices == std::set<std::uint64_t>{4, 5, 7});
}

TEST_CASE("connection set size equals the primary count", "[cayley_graph]") {
    for (std::uint32_t n = 3; n <= 6; ++n) {
        BaseField F(3, 1);
        ExtField K(F, first_irreducible(F, n));
        for (std::uint32_t d = 1; d < n && d <= 3; ++d) {
            GraphSpec spec(K, d);
            ConnectionSet cs = connection_set(spec);
            CHECK(Bigint(cs.size()) == count_primary(F, d));
            std::set<std::uint64_t> distinct;
            for (const ConnectionElement& e : cs.elements) {
                CHECK_FALSE(spec.ext.is_zero(e.value));
                CHECK_FALSE(e.value == spec.ext.one());  // 1 would create loops
                distinct.insert(spec.ext.to_index(e.value));
            }
            CHECK(distinct.size() == cs.size());
        }
    }
}

TEST_CASE("degree bounds on the graph spec", "[cayley_graph]") {
    ExtField K(BaseField(2, 1), Poly{{1, 1, 0, 0, 1}});
    CHECK_THROWS_AS(GraphSpec(K, 0), InputError);
    CHECK_THROWS_AS(GraphSpec(K, 4), InputError);
    CHECK_THROWS_AS(GraphSpec(K, 9), InputError);
}

TEST_CASE("subgroup closure on F_9 generates everything", "[cayley_graph]") {
    SubgroupDescriptor sd = subgroup_closure(spec_f9_d1());
    CHECK(sd.order == 8);
    CHECK(sd.index == 1);
}

TEST_CASE("order times index is the group order", "[cayley_graph]") {
    for (std::uint32_t n = 3; n <= 7; ++n) {
        BaseField F(2, 1);
        for (Poly& f : enumerate_irreducibles(F, n)) {
            ExtField K(F, f);
            for (std::uint32_t d = 1; d < n && d <= 3; ++d) {
                SubgroupDescriptor sd = subgroup_closure(GraphSpec(K, d));
                CHECK(sd.order * sd.index == K.N());
            }
        }
    }
}

TEST_CASE("BFS component count matches closure and Tarjan", "[cayley_graph]") {
    for (std::uint64_t p : {2ull, 3ull}) {
        BaseField F(p, 1);
        for (std::uint32_t n = 2; n <= (p == 2 ? 6u : 4u); ++n) {
            for (Poly& f : enumerate_irreducibles(F, n)) {
                ExtField K(F, f);
                for (std::uint32_t d = 1; d < n && d <= 2; ++d) {
                    GraphSpec spec(K, d);
                    Bigint bfs = components_bfs(spec);
                    CHECK(bfs == subgroup_closure(spec).index);
                    CHECK(bfs == Bigint(oracle::scc_count(oracle::adjacency(spec))));
                }
            }
        }
    }
}

TEST_CASE("diameter of the F_9 graph", "[cayley_graph]") {
    std::optional<std::uint32_t> D = diameter_bfs(spec_f9_d1());
    REQUIRE(D.has_value());
    CHECK(*D == 3);
}

TEST_CASE("single-source diameter equals all-pairs on vertex-transitive graphs", "[cayley_graph]") {
    BaseField F(2, 1);
    for (std::uint32_t n : {4u, 5u, 6u}) {
        for (Poly& f : enumerate_irreducibles(F, n)) {
            ExtField K(F, f);
            for (std::uint32_t d = 1; d < n && d <= 2; ++d) {
                GraphSpec spec(K, d);
                CHECK(diameter_bfs(spec) == oracle::diameter_all_pairs(oracle::adjacency(spec)));
            }
        }
    }
}

TEST_CASE("a disconnected instance reports no diameter", "[cayley_graph]") {
    // x^3 + 2x + 2 over F_3 splits the graph into two components at d = 1
    GraphSpec spec(ExtField(BaseField(3, 1), Poly{{2, 2, 0, 1}}), 1);
    REQUIRE(components_bfs(spec) == 2);
    CHECK_FALSE(diameter_bfs(spec).has_value());

    // and every component count > 1 must give nullopt across a small scan
    BaseField F3(3, 1);
    for (Poly& f : enumerate_irreducibles(F3, 3)) {
        GraphSpec s(ExtField(F3, f), 1);
        CHECK(diameter_bfs(s).has_value() == (components_bfs(s) == 1));
    }
}

TEST_CASE("edge list export is |P_d|-regular", "[cayley_graph]") {
    GraphSpec spec = spec_f9_d1();
    std::string text = export_graph(spec, "edge-list");
    std::istringstream in(text);
    std::map<std::uint64_t, std::uint64_t> out_deg, in_deg;
    std::uint64_t src, dst, weight, lines = 0;
    while (in >> src >> dst >> weight) {
        ++lines;
        ++out_deg[src];
        ++in_deg[dst];
        CHECK(weight >= 1);
        CHECK(src >= 1);
        CHECK(src <= 8);
        CHECK(dst >= 1);
        CHECK(dst <= 8);
    }
    CHECK(lines == 24);  // N * |P_1| = 8 * 3
    for (std::uint64_t v = 1; v <= 8; ++v) {
        CHECK(out_deg[v] == 3);
        CHECK(in_deg[v] == 3);
    }
}

TEST_CASE("dot export is a directed graph description", "[cayley_graph]") {
    std::string text = export_graph(spec_f16(1), "dot");
    CHECK(text.rfind("digraph", 0) == 0);
    CHECK(text.find("->") != std::string::npos);
    CHECK(std::count(text.begin(), text.end(), '{') == 1);
    CHECK(std::count(text.begin(), text.end(), '}') == 1);
    // one node line per vertex, one edge line per (vertex, generator) pair
    CHECK(std::count(text.begin(), text.end(), ';') >= 15 + 15 * 2);
}

TEST_CASE("adjacency csv has a header naming the generators", "[cayley_graph]") {
    std::string text = export_graph(spec_f9_d1(), "adjacency-csv");
    std::istringstream in(text);
    std::string header;
    std::getline(in, header);
    CHECK(header.rfind("vertex,", 0) == 0);
    CHECK(header.find("x") != std::string::npos);
    std::uint64_t rows = 0;
    for (std::string line; std::getline(in, line);)
        if (!line.empty()) ++rows;
    CHECK(rows == 8);
}

TEST_CASE("unknown export formats are rejected", "[cayley_graph]") {
    CHECK_THROWS_AS(export_graph(spec_f9_d1(), "yaml"), InputError);
    CHECK_THROWS_AS(export_graph(spec_f9_d1(), ""), InputError);
}
