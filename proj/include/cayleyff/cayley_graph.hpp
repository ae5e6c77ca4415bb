#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "bigint.hpp"
#include "errors.hpp"
#include "ext_field.hpp"
#include "poly_enum.hpp"

namespace cayleyff {

/// The graph G_d(n,q,alpha): vertices are the units of F_q[x]/(f), with an
/// edge b1 -> b2 exactly when b2/b1 lies in the connection set E_d.
struct GraphSpec {
    ExtField ext;
    std::uint32_t d;

    GraphSpec(ExtField e, std::uint32_t degree) : ext(std::move(e)), d(degree) {
        if (d < 1 || d >= ext.n()) throw degree_mismatch("connection degree must satisfy 1 <= d < n");
    }
};

struct ConnectionElement {
    Xelt value;  // g(alpha)
    PrimaryRecord generator;
};

/// E_d = {g(alpha) : g in P_d}; all values distinct, nonzero, never 1.
struct ConnectionSet {
    std::vector<ConnectionElement> elements;

    std::uint64_t size() const { return elements.size(); }
};

/// H = <E_d> inside the unit group; order * index = N.
struct SubgroupDescriptor {
    Bigint order;
    Bigint index;
};

namespace detail {

inline void check_table_scale(const ExtField& ext) {
    if (ext.N() > kSizeGuardLimit) throw size_guard("table-based operation beyond the size guard");
}

inline std::uint64_t vertex_count(const ExtField& ext) {
    return static_cast<std::uint64_t>(ext.N()) + 1;  // q^n indices, index 0 = zero element
}

}  // namespace detail

/// Evaluate every primary of degree d at alpha, in canonical P_d order.
/// Distinctness is a theorem (deg g = d < n), so a collision is a bug.
inline ConnectionSet connection_set(const GraphSpec& spec) {
    const ExtField& K = spec.ext;
    ConnectionSet cs;
    std::set<std::vector<Felt>> seen;
    for (PrimaryRecord& rec : enumerate_primary(K.base(), spec.d)) {
        Xelt v = K.x_eval(rec.poly, K.alpha());
        if (K.is_zero(v) || v == K.one()) throw collision_detected("connection element degenerate: " + K.to_string(v));
        if (!seen.insert(v.coeffs).second) throw collision_detected("duplicate connection element: " + K.to_string(v));
        cs.elements.push_back(ConnectionElement{std::move(v), std::move(rec)});
    }
    return cs;
}

/// Brute-force closure of <E_d> by a multiplication worklist; the oracle
/// against which the algebraic component counts are checked.
inline SubgroupDescriptor subgroup_closure(const GraphSpec& spec, const ConnectionSet& cs) {
    const ExtField& K = spec.ext;
    detail::check_table_scale(K);
    std::vector<std::uint8_t> member(detail::vertex_count(K), 0);
    std::vector<std::uint64_t> work;
    member[K.to_index(K.one())] = 1;
    work.push_back(K.to_index(K.one()));
    std::uint64_t count = 1;
    while (!work.empty()) {
        Xelt cur = K.from_index(work.back());
        work.pop_back();
        for (const ConnectionElement& e : cs.elements) {
            std::uint64_t idx = K.to_index(K.x_mul(cur, e.value));
            if (!member[idx]) {
                member[idx] = 1;
                work.push_back(idx);
                ++count;
            }
        }
    }
    SubgroupDescriptor out;
    out.order = count;
    if (K.N() % count != 0) throw internal_error("closure size does not divide the group order");
    out.index = K.N() / count;
    return out;
}

inline SubgroupDescriptor subgroup_closure(const GraphSpec& spec) { return subgroup_closure(spec, connection_set(spec)); }

/// Strong components by traversal. Components are the cosets of <E_d>, so
/// following out-edges from each unvisited vertex labels one component.
inline Bigint components_bfs(const GraphSpec& spec) {
    const ExtField& K = spec.ext;
    detail::check_table_scale(K);
    ConnectionSet cs = connection_set(spec);
    std::uint64_t total = detail::vertex_count(K);
    std::vector<std::uint8_t> visited(total, 0);
    std::vector<std::uint64_t> stack;
    Bigint components = 0;
    for (std::uint64_t start = 1; start < total; ++start) {
        if (visited[start]) continue;
        ++components;
        visited[start] = 1;
        stack.push_back(start);
        while (!stack.empty()) {
            Xelt cur = K.from_index(stack.back());
            stack.pop_back();
            for (const ConnectionElement& e : cs.elements) {
                std::uint64_t idx = K.to_index(K.x_mul(cur, e.value));
                if (!visited[idx]) {
                    visited[idx] = 1;
                    stack.push_back(idx);
                }
            }
        }
    }
    return components;
}

/// Eccentricity of vertex 1 along directed edges; by vertex-transitivity
/// this is the diameter. Empty when the graph is disconnected.
inline std::optional<std::uint32_t> diameter_bfs(const GraphSpec& spec) {
    const ExtField& K = spec.ext;
    detail::check_table_scale(K);
    ConnectionSet cs = connection_set(spec);
    std::uint64_t total = detail::vertex_count(K);
    std::vector<std::int32_t> dist(total, -1);
    std::vector<std::uint64_t> frontier{K.to_index(K.one())};
    dist[frontier[0]] = 0;
    std::uint64_t reached = 1;
    std::uint32_t depth = 0;
    while (!frontier.empty()) {
        std::vector<std::uint64_t> next;
        for (std::uint64_t v : frontier) {
            Xelt cur = K.from_index(v);
            for (const ConnectionElement& e : cs.elements) {
                std::uint64_t idx = K.to_index(K.x_mul(cur, e.value));
                if (dist[idx] < 0) {
                    dist[idx] = static_cast<std::int32_t>(depth + 1);
                    next.push_back(idx);
                    ++reached;
                }
            }
        }
        if (!next.empty()) ++depth;
        frontier = std::move(next);
    }
    if (Bigint(reached) != K.N()) return std::nullopt;
    return depth;
}

/// Deterministic text export. Formats: "edge-list" (src dst weight),
/// "dot" (vertices labeled by coefficient list, edges labeled by weight),
/// "adjacency-csv" (one row per vertex, one neighbor column per generator).
inline std::string export_graph(const GraphSpec& spec, const std::string& format) {
    const ExtField& K = spec.ext;
    detail::check_table_scale(K);
    ConnectionSet cs = connection_set(spec);
    std::uint64_t total = detail::vertex_count(K);
    std::string out;
    if (format == "edge-list") {
        for (std::uint64_t v = 1; v < total; ++v) {
            Xelt cur = K.from_index(v);
            for (const ConnectionElement& e : cs.elements) {
                out += std::to_string(v);
                out += ' ';
                out += std::to_string(K.to_index(K.x_mul(cur, e.value)));
                out += ' ';
                out += std::to_string(e.generator.lambda);
                out += '\n';
            }
        }
        return out;
    }
    if (format == "dot") {
        out += "digraph cayley {\n";
        for (std::uint64_t v = 1; v < total; ++v) {
            out += "  v" + std::to_string(v) + " [label=\"" + K.to_string(K.from_index(v)) + "\"];\n";
        }
        for (std::uint64_t v = 1; v < total; ++v) {
            Xelt cur = K.from_index(v);
            for (const ConnectionElement& e : cs.elements) {
                out += "  v" + std::to_string(v) + " -> v" + std::to_string(K.to_index(K.x_mul(cur, e.value))) +
                       " [label=" + std::to_string(e.generator.lambda) + "];\n";
            }
        }
        out += "}\n";
        return out;
    }
    if (format == "adjacency-csv") {
        out += "vertex";
        for (const ConnectionElement& e : cs.elements) {
            out += ',';
            out += poly_to_human(e.generator.poly);
        }
        out += '\n';
        for (std::uint64_t v = 1; v < total; ++v) {
            Xelt cur = K.from_index(v);
            out += std::to_string(v);
            for (const ConnectionElement& e : cs.elements) {
                out += ',';
                out += std::to_string(K.to_index(K.x_mul(cur, e.value)));
            }
            out += '\n';
        }
        return out;
    }
    throw unknown_format("export format must be edge-list, dot, or adjacency-csv");
}

}  // namespace cayleyff
