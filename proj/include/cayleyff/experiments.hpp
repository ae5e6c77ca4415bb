#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <future>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cayley_graph.hpp"
#include "comp_algebraic.hpp"
#include "errors.hpp"
#include "ext_field.hpp"
#include "factorization.hpp"
#include "poly_enum.hpp"
#include "spectrum.hpp"

namespace cayleyff {

struct DiameterBound {
    double bound = 0;             // 2n/d + 1 + 4(n/d)log(n-1) / (d log q - 2 log(n-1))
    bool cor16_applies = false;   // q^d > (n-1)^(4n/d+2), then D <= 2n/d + 1
    double proof_threshold = 0;   // 2n / (d - 2 log_q(n-1)); bound ~ threshold + 1
};

/// Diameter bound in the forced-connected regime; exact integer arithmetic
/// decides applicability and cor16_applies (both sides raised to
/// the d-th power to clear the rational exponent).
inline DiameterBound diameter_bound(const BaseField& base, std::uint32_t n, std::uint32_t d) {
    if (!connected_regime(base, n, d)) throw not_applicable("diameter bound requires n < q^(d/2) + 1");
    DiameterBound out;
    double q = static_cast<double>(base.q());
    double log_n1 = std::log(static_cast<double>(n) - 1.0);
    double denom = d * std::log(q) - 2.0 * log_n1;  // positive inside the regime
    out.bound = 2.0 * n / d + 1.0 + 4.0 * (static_cast<double>(n) / d) * log_n1 / denom;
    out.proof_threshold = 2.0 * n / (d - 2.0 * log_n1 / std::log(q));
    Bigint lhs = pow_int(Bigint(base.q()), static_cast<std::uint64_t>(d) * d);
    Bigint rhs = pow_int(Bigint(n - 1), 4ull * n + 2ull * d);
    out.cor16_applies = lhs > rhs;
    return out;
}

inline DiameterBound diameter_bound(const GraphSpec& spec) {
    return diameter_bound(spec.ext.base(), spec.ext.n(), spec.d);
}

struct DiameterVerification {
    std::uint32_t actual = 0;
    double bound = 0;
    bool ok = false;
};

/// BFS diameter against the bound. Inside the regime the graph must be
/// connected, so disconnection is a mathematical assertion failure.
inline DiameterVerification verify_diameter(const GraphSpec& spec, const Factorization& fact) {
    DiameterBound b = diameter_bound(spec);  // validates the regime
    DescentResult dr = components_descent(spec, fact);
    if (dr.index != 1) throw theorem_violation("forced-connected instance reported disconnected");
    std::optional<std::uint32_t> D = diameter_bfs(spec);
    if (!D) throw theorem_violation("forced-connected instance is not strongly connected");
    DiameterVerification out;
    out.actual = *D;
    out.bound = b.bound;
    out.ok = static_cast<double>(*D) <= b.bound;
    return out;
}

constexpr std::uint64_t kProductOpsBudget = std::uint64_t{1} << 33;

/// N_k(beta) for every beta: the number of ordered k-tuples of connection
/// elements multiplying to beta, by k-fold integer convolution.
inline std::vector<std::uint64_t> count_products(const GraphSpec& spec, std::uint32_t k) {
    if (k < 1) throw parse_error("k must be >= 1");
    const ExtField& K = spec.ext;
    detail::check_table_scale(K);
    ConnectionSet cs = connection_set(spec);
    std::uint64_t total = detail::vertex_count(K);
    if (static_cast<std::uint64_t>(k) * (total - 1) * cs.size() > kProductOpsBudget)
        throw budget_exceeded("N * k * |E_d| beyond the convolution budget");

    std::vector<std::uint64_t> cur(total, 0);
    for (const ConnectionElement& e : cs.elements) cur[K.to_index(e.value)] += 1;
    for (std::uint32_t step = 2; step <= k; ++step) {
        std::vector<std::uint64_t> next(total, 0);
        for (std::uint64_t v = 1; v < total; ++v) {
            if (cur[v] == 0) continue;
            Xelt b = K.from_index(v);
            for (const ConnectionElement& e : cs.elements) {
                std::uint64_t idx = K.to_index(K.x_mul(b, e.value));
                if (next[idx] > std::numeric_limits<std::uint64_t>::max() - cur[v])
                    throw budget_exceeded("product counter overflow");
                next[idx] += cur[v];
            }
        }
        cur = std::move(next);
    }
    return cur;
}

namespace detail {

/// n >= 2d + 2(|P_d|+1) log_q(ell), decided exactly as
/// q^(n-2d) >= ell^(2(|P_d|+1)) with early bailout on the blowing-up side.
inline bool divisibility_hypothesis(const BaseField& base, std::uint32_t n, std::uint32_t d, const Bigint& ell) {
    if (n < 2 * d) return false;
    Bigint lhs = pow_int(Bigint(base.q()), n - 2 * d);
    Bigint p_count = count_primary(base, d);
    if (p_count > (std::uint64_t{1} << 40)) throw size_guard("|P_d| too large for the hypothesis check");
    std::uint64_t e = 2 * (static_cast<std::uint64_t>(p_count) + 1);
    Bigint rhs = 1;
    for (std::uint64_t i = 0; i < e; ++i) {
        rhs *= ell;
        if (rhs > lhs) return false;
    }
    return lhs >= rhs;
}

}  // namespace detail

struct SearchResult {
    bool hypothesis_holds = false;   // guarantees a nonempty hit list
    std::vector<std::pair<Poly, Bigint>> hits;  // (f, component count) with ell | count
    std::uint64_t scanned = 0;
};

/// Scan every monic irreducible f of degree n for component counts divisible
/// by ell. Under the hypothesis an empty result is a hard failure.
inline SearchResult search_disconnected(const BaseField& base, std::uint32_t n, std::uint32_t d, const Bigint& ell,
                                        const std::optional<Factorization>& fact_hint = std::nullopt) {
    if (d < 1 || d >= n) throw degree_mismatch("search requires 1 <= d < n");
    Bigint N = pow_int(Bigint(base.q()), n) - 1;
    if (ell <= 1 || N % ell != 0) throw ell_does_not_divide("ell must be a nontrivial divisor of q^n - 1");
    Factorization fact = factor(N, fact_hint);
    SearchResult out;
    out.hypothesis_holds = detail::divisibility_hypothesis(base, n, d, ell);
    for (Poly& f : enumerate_irreducibles(base, n)) {
        GraphSpec spec(ExtField(base, f), d);
        DescentResult dr = components_descent(spec, fact);
        ++out.scanned;
        if (dr.index % ell == 0) out.hits.emplace_back(std::move(f), dr.index);
    }
    if (out.hypothesis_holds && out.hits.empty())
        throw theorem_violation("hypothesis satisfied but no f with ell-divisible component count");
    return out;
}

/// Brute-force count of degree-n elements alpha whose every I_d evaluation
/// lands in the index-ell subgroup (tested by powering to N/ell).
inline Bigint count_N_ell(const BaseField& base, std::uint32_t n, std::uint32_t d, const Bigint& ell,
                          const Factorization& fact) {
    if (d < 1 || d >= n) throw degree_mismatch("count requires 1 <= d < n");
    ExtField K(base, first_irreducible(base, n));
    detail::check_group_order(K, fact);
    if (ell < 1 || K.N() % ell != 0) throw ell_does_not_divide("ell must divide q^n - 1");
    Bigint e = K.N() / ell;
    std::vector<Poly> gens = enumerate_irr_divisors(base, d);
    std::uint64_t total = detail::vertex_count(K);
    Bigint count = 0;
    for (std::uint64_t v = 1; v < total; ++v) {
        Xelt a = K.from_index(v);
        if (K.element_degree(a) != n) continue;
        bool member = true;
        for (const Poly& g : gens) {
            if (!(K.x_pow(K.x_eval(g, a), e) == K.one())) {
                member = false;
                break;
            }
        }
        if (member) ++count;
    }
    return count;
}

struct CensusResult {
    Poly field_modulus;                          // the canonical f used as the ambient model
    Bigint fields_total;                         // pi_n, cross-checked against the counting formula
    std::map<std::uint64_t, Bigint> field_histogram;  // component count -> number of f
    bool all_connected = false;
};

/// Exhaustive connectivity over every irreducible f of degree n at once:
/// each degree-n element r of one ambient model F_{q^n} is a root of exactly
/// one f, and the component count for (f, d) equals gcd(N, logs of the
/// connection set evaluated at r). Conjugate roots agree, so element tallies
/// come in blocks of n.
inline CensusResult connectivity_census(const BaseField& base, std::uint32_t n, std::uint32_t d,
                                        const std::optional<Factorization>& fact_hint = std::nullopt) {
    if (d < 1 || d >= n) throw degree_mismatch("census requires 1 <= d < n");
    ExtField K(base, first_irreducible(base, n));
    std::uint64_t N = static_cast<std::uint64_t>(K.N());
    Factorization fact = factor(K.N(), fact_hint);
    LogTable table = build_log_table(K, find_generator(K, fact));

    std::vector<PrimaryRecord> primaries = enumerate_primary(base, d);
    std::vector<std::uint64_t> subfield_marker;  // log multiples of these lie in proper subfields
    for (std::uint64_t r : prime_divisors_u64(n)) {
        std::uint64_t k = n / r;
        std::uint64_t sub = 1;
        for (std::uint64_t i = 0; i < k; ++i) sub *= base.q();
        subfield_marker.push_back(N / (sub - 1));
    }

    const BaseField& F = base;
    std::map<std::uint64_t, Bigint> element_tally;
    std::vector<std::vector<Felt>> pw(d + 1);
    for (std::uint64_t v = 1; v <= N; ++v) {
        std::uint64_t lv = table.logs[v];
        bool proper = false;
        for (std::uint64_t m : subfield_marker)
            if (lv % m == 0) {
                proper = true;
                break;
            }
        if (proper) continue;

        Xelt r = K.from_index(v);
        pw[0] = K.one().coeffs;
        pw[1] = r.coeffs;
        for (std::uint32_t i = 2; i <= d; ++i) pw[i] = K.x_mul(Xelt{pw[i - 1]}, r).coeffs;

        std::uint64_t c = N;
        for (const PrimaryRecord& rec : primaries) {
            std::vector<Felt> val(K.n(), 0);
            for (std::size_t i = 0; i < rec.poly.coeffs.size(); ++i) {
                Felt coef = rec.poly.coeffs[i];
                if (coef == 0) continue;
                const std::vector<Felt>& row = pw[i];
                for (std::uint32_t j = 0; j < K.n(); ++j) val[j] = F.add(val[j], F.mul(coef, row[j]));
            }
            std::uint64_t idx = 0;
            for (std::uint32_t j = K.n(); j-- > 0;) idx = idx * F.q() + val[j];
            c = std::gcd(c, static_cast<std::uint64_t>(table.logs[idx]));
            if (c == 1) break;
        }
        element_tally[c] += 1;
    }

    CensusResult out;
    out.field_modulus = K.f();
    out.fields_total = 0;
    for (auto& [idx, cnt] : element_tally) {
        if (cnt % n != 0) throw internal_error("conjugate orbits must tally in blocks of n");
        out.field_histogram[idx] = cnt / n;
        out.fields_total += cnt / n;
    }
    if (out.fields_total != count_irreducibles(base, n)) throw internal_error("census misses irreducible fields");
    out.all_connected = out.field_histogram.size() == 1 && out.field_histogram.begin()->first == 1;
    return out;
}

struct SweepCell {
    std::uint32_t n = 0;
    std::uint32_t d = 0;
};

struct SweepOptions {
    std::optional<Bigint> ell;                 // reference divisor for regime classification
    bool timing = false;                       // real seconds in the CSV column (placeholder 0 otherwise)
    std::uint32_t jobs = 1;                    // per-f fan-out; rows always merge in f order
    std::uint64_t diameter_limit = std::uint64_t{1} << 16;
    std::uint64_t spectrum_limit = std::uint64_t{1} << 14;
};

struct SweepRow {
    std::uint64_t q = 0;
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    Poly f;
    std::string regime;                        // forced-connected | gap | divisible-guaranteed
    Bigint components;
    Bigint bound_components;                   // the combinatorial bound
    std::optional<std::uint32_t> diameter;
    std::optional<double> diameter_bound_value;
    std::optional<double> delta_star;
    double seconds = 0;
};

struct SweepReport {
    std::vector<SweepRow> rows;
    Factorization last_factorization;          // of the final cell's N, echoed into JSON
};

/// Per-f component counts, regime labels, and bounds over a grid of (n, d)
/// cells; deterministic row order (cells as given, f ascending).
inline SweepReport connectivity_sweep(const BaseField& base, const std::vector<SweepCell>& cells,
                                      const SweepOptions& opt = {}) {
    SweepReport rep;
    for (const SweepCell& cell : cells) {
        if (cell.d < 1 || cell.d >= cell.n) throw degree_mismatch("sweep cell requires 1 <= d < n");
        Bigint N = pow_int(Bigint(base.q()), cell.n) - 1;
        Factorization fact = factor(N);
        rep.last_factorization = fact;
        Bigint ell = opt.ell.value_or(fact.factors.front().first);
        if (N % ell != 0 || ell <= 1) throw ell_does_not_divide("sweep ell must be a nontrivial divisor of q^n - 1");
        bool regime1 = connected_regime(base, cell.n, cell.d);
        bool regime3 = detail::divisibility_hypothesis(base, cell.n, cell.d, ell);
        std::vector<Poly> fs = enumerate_irreducibles(base, cell.n);

        auto run_one = [&](const Poly& f) {
            auto t0 = std::chrono::steady_clock::now();
            GraphSpec spec(ExtField(base, f), cell.d);
            SweepRow row;
            row.q = base.q();
            row.n = cell.n;
            row.d = cell.d;
            row.f = f;
            row.regime = regime1 ? "forced-connected" : regime3 ? "divisible-guaranteed" : "gap";
            row.components = components_descent(spec, fact).index;
            row.bound_components = theorem14_bound(spec);
            if (row.components > row.bound_components)
                throw theorem_violation("component count exceeds the combinatorial bound");
            if (regime1 && row.components != 1)
                throw theorem_violation("forced-connected cell produced a disconnected instance");
            if (regime1) row.diameter_bound_value = diameter_bound(spec).bound;
            if (row.components == 1 && N <= opt.diameter_limit) {
                std::optional<std::uint32_t> D = diameter_bfs(spec);
                if (!D) throw internal_error("connected instance with unreachable vertices");
                row.diameter = D;
                if (row.diameter_bound_value && static_cast<double>(*D) > *row.diameter_bound_value)
                    throw theorem_violation("diameter exceeds its bound in the forced-connected regime");
            }
            if (N <= opt.spectrum_limit) {
                LogTable table = build_log_table(spec.ext, find_generator(spec.ext, fact));
                SpectrumReport sr = eigenvalues(spec, table, SpectrumKind::unweighted);
                if (Bigint(sr.trivial_multiplicity) != row.components)
                    throw theorem_violation("spectral multiplicity disagrees with the descent count");
                row.delta_star = sr.delta_certified.value_or(0.0);
            }
            auto t1 = std::chrono::steady_clock::now();
            if (opt.timing) row.seconds = std::chrono::duration<double>(t1 - t0).count();
            return row;
        };

        if (opt.jobs <= 1) {
            for (const Poly& f : fs) rep.rows.push_back(run_one(f));
        } else {
            std::size_t jobs = std::min<std::size_t>(opt.jobs, fs.size());
            std::size_t chunk = (fs.size() + jobs - 1) / jobs;
            std::vector<std::future<std::vector<SweepRow>>> blocks;
            for (std::size_t w = 0; w < jobs; ++w) {
                std::size_t begin = w * chunk, end = std::min(begin + chunk, fs.size());
                if (begin >= end) break;
                blocks.push_back(std::async(std::launch::async, [&, begin, end] {
                    std::vector<SweepRow> out;
                    for (std::size_t i = begin; i < end; ++i) out.push_back(run_one(fs[i]));
                    return out;
                }));
            }
            for (auto& b : blocks)
                for (SweepRow& row : b.get()) rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

/// CSV with the fixed column set; the f column is the quoted canonical
/// coefficient list; absent optionals print empty.
inline std::string sweep_csv(const SweepReport& rep) {
    std::string out = "q,n,d,f,regime,components,thm14_bound,diameter,diameter_bound,delta_star,seconds\n";
    char buf[64];
    for (const SweepRow& row : rep.rows) {
        out += std::to_string(row.q);
        out += ',' + std::to_string(row.n);
        out += ',' + std::to_string(row.d);
        out += ",\"" + poly_to_string(row.f) + "\"";
        out += ',' + row.regime;
        out += ',' + to_string(row.components);
        out += ',' + to_string(row.bound_components);
        out += ',';
        if (row.diameter) out += std::to_string(*row.diameter);
        out += ',';
        if (row.diameter_bound_value) {
            std::snprintf(buf, sizeof buf, "%.6f", *row.diameter_bound_value);
            out += buf;
        }
        out += ',';
        if (row.delta_star) {
            std::snprintf(buf, sizeof buf, "%.9f", *row.delta_star);
            out += buf;
        }
        std::snprintf(buf, sizeof buf, ",%.6f\n", row.seconds);
        out += buf;
    }
    return out;
}

}  // namespace cayleyff
