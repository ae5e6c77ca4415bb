#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "cayley_graph.hpp"
#include "comp_algebraic.hpp"
#include "errors.hpp"
#include "ext_field.hpp"
#include "factorization.hpp"

namespace cayleyff {

/// Discrete logs to a fixed generator gamma: logs[vertex index] in [0, N),
/// with the zero element parked at the unset sentinel.
struct LogTable {
    static constexpr std::uint32_t kUnset = 0xffffffffu;

    Xelt generator;
    std::vector<std::uint32_t> logs;  // size q^n

    std::uint64_t group_order() const { return logs.size() - 1; }
};

/// First element in canonical vertex order whose order is N.
inline Xelt find_generator(const ExtField& K, const Factorization& fact) {
    detail::check_group_order(K, fact);
    std::uint64_t total = static_cast<std::uint64_t>(K.N()) + 1;
    for (std::uint64_t v = 1; v < total; ++v) {
        Xelt a = K.from_index(v);
        if (element_order(K, a, fact) == K.N()) return a;
    }
    throw internal_error("cyclic group without a generator");
}

/// One multiplicative walk gamma^0 .. gamma^(N-1); an early return to a
/// visited vertex means gamma does not generate.
inline LogTable build_log_table(const ExtField& K, const Xelt& gamma, bool force = false) {
    if (!force && K.N() > kSizeGuardLimit) throw size_guard("log table beyond the size guard");
    if (K.N() >= LogTable::kUnset) throw size_guard("log table requires N < 2^32");
    std::uint64_t N = static_cast<std::uint64_t>(K.N());
    LogTable table;
    table.generator = gamma;
    table.logs.assign(N + 1, LogTable::kUnset);
    Xelt cur = K.one();
    for (std::uint64_t step = 0; step < N; ++step) {
        std::uint64_t idx = K.to_index(cur);
        if (table.logs[idx] != LogTable::kUnset) throw not_a_generator("walk closed after " + std::to_string(step) + " steps");
        table.logs[idx] = static_cast<std::uint32_t>(step);
        cur = K.x_mul(cur, gamma);
    }
    if (!(cur == K.one())) throw internal_error("generator walk did not close at the identity");
    return table;
}

enum class SpectrumKind { unweighted, weighted };

/// Full eigenvalue list of the adjacency operator (unweighted) or its von
/// Mangoldt weighted variant, indexed by character exponent j.
struct SpectrumReport {
    SpectrumKind kind = SpectrumKind::unweighted;
    double trivial_eigenvalue = 0;               // |P_d| unweighted, q^d weighted
    std::uint64_t trivial_multiplicity = 0;      // eigenvalues within tolerance of the trivial one
    std::vector<std::complex<double>> eigenvalues;
    double max_nontrivial_modulus = 0;           // over characters nontrivial on H
    double weil_bound = 0;                       // (n-1) * q^(d/2)
    double thm17_bound = 0;                      // (n+d-1)/d * q^(d/2)
    std::optional<double> delta_certified;       // 1 - max_nontrivial/trivial
    Bigint subgroup_order;                       // |H| from exact log gcd
    Bigint subgroup_index;                       // component count, exact
    Xelt generator;
    double tolerance = 0;
};

namespace detail {

/// Shared between the direct-summation and dense-transform paths: derive
/// every report field from the raw eigenvalue array.
inline SpectrumReport assemble_spectrum_report(const GraphSpec& spec, const LogTable& table, SpectrumKind kind,
                                               std::vector<std::complex<double>> values, std::uint64_t weight_sum,
                                               std::uint64_t subgroup_order) {
    const ExtField& K = spec.ext;
    std::uint64_t N = table.group_order();
    SpectrumReport rep;
    rep.kind = kind;
    rep.generator = table.generator;
    rep.trivial_eigenvalue = static_cast<double>(weight_sum);
    rep.tolerance = 1e-6 * rep.trivial_eigenvalue;
    rep.eigenvalues = std::move(values);
    rep.subgroup_order = subgroup_order;
    rep.subgroup_index = Bigint(N / subgroup_order);
    double q = static_cast<double>(K.base().q());
    double root = std::pow(q, spec.d / 2.0);
    rep.weil_bound = (K.n() - 1) * root;
    rep.thm17_bound = (K.n() + spec.d - 1) / static_cast<double>(spec.d) * root;
    std::uint64_t mult = 0;
    double max_nontrivial = 0;
    for (std::uint64_t j = 0; j < N; ++j) {
        if (std::abs(rep.eigenvalues[j] - rep.trivial_eigenvalue) < rep.tolerance) ++mult;
        if (j % subgroup_order != 0) max_nontrivial = std::max(max_nontrivial, std::abs(rep.eigenvalues[j]));
    }
    rep.trivial_multiplicity = mult;
    rep.max_nontrivial_modulus = max_nontrivial;
    if (subgroup_order > 1)  // otherwise no character is nontrivial on H
        rep.delta_certified = 1.0 - max_nontrivial / rep.trivial_eigenvalue;
    return rep;
}

/// Logs and weights of the connection set under the table's generator.
inline void connection_logs(const GraphSpec& spec, const LogTable& table, SpectrumKind kind,
                            std::vector<std::uint64_t>& logs, std::vector<std::uint64_t>& weights,
                            std::uint64_t& weight_sum, std::uint64_t& subgroup_order) {
    const ExtField& K = spec.ext;
    ConnectionSet cs = connection_set(spec);
    std::uint64_t N = table.group_order();
    logs.clear();
    weights.clear();
    weight_sum = 0;
    std::uint64_t g = N;
    for (const ConnectionElement& e : cs.elements) {
        std::uint32_t l = table.logs[K.to_index(e.value)];
        if (l == LogTable::kUnset) throw internal_error("connection element missing from the log table");
        std::uint64_t w = kind == SpectrumKind::weighted ? e.generator.lambda : 1;
        logs.push_back(l);
        weights.push_back(w);
        weight_sum += w;
        g = std::gcd(g, static_cast<std::uint64_t>(l));
    }
    subgroup_order = N / g;  // <E_d> = <gamma^gcd>, so |H| = N / gcd
}

}  // namespace detail

/// Direct summation: for each character exponent j, sum w(g) * root(j * log g).
/// O(N * |P_d|), the default engine.
inline SpectrumReport eigenvalues(const GraphSpec& spec, const LogTable& table, SpectrumKind kind) {
    std::uint64_t N = table.group_order();
    std::vector<std::uint64_t> logs, weights;
    std::uint64_t weight_sum = 0, subgroup_order = 0;
    detail::connection_logs(spec, table, kind, logs, weights, weight_sum, subgroup_order);

    std::vector<std::complex<double>> roots(N);
    const double two_pi = 2.0 * 3.141592653589793238462643383279502884;
    for (std::uint64_t t = 0; t < N; ++t) roots[t] = std::polar(1.0, two_pi * static_cast<double>(t) / static_cast<double>(N));

    std::vector<std::complex<double>> values(N);
    for (std::uint64_t j = 0; j < N; ++j) {
        std::complex<double> acc = 0;
        for (std::size_t i = 0; i < logs.size(); ++i) acc += static_cast<double>(weights[i]) * roots[j * logs[i] % N];
        values[j] = acc;
    }
    return detail::assemble_spectrum_report(spec, table, kind, std::move(values), weight_sum, subgroup_order);
}

struct WeilResult {
    bool pass = false;
    double margin = 0;   // bound - max over nontrivial characters of the full group
    double max_abs = 0;
    double bound = 0;
};

/// Character-sum magnitude check on a weighted report: every j != 0 must
/// stay below (n-1) * q^(d/2) up to float tolerance.
inline WeilResult weil_check(const SpectrumReport& report, const GraphSpec& spec) {
    if (report.kind != SpectrumKind::weighted) throw wrong_kind("weil_check requires a weighted report");
    WeilResult out;
    out.bound = report.weil_bound;
    for (std::size_t j = 1; j < report.eigenvalues.size(); ++j)
        out.max_abs = std::max(out.max_abs, std::abs(report.eigenvalues[j]));
    out.margin = out.bound - out.max_abs;
    out.pass = out.max_abs <= out.bound + 1e-6;
    (void)spec;
    return out;
}

enum class ExpanderVerdict { pass, fail, hypothesis_not_met };

struct ExpanderResult {
    ExpanderVerdict verdict = ExpanderVerdict::hypothesis_not_met;
    bool hypothesis_holds = false;
    double delta_star = 0;      // certified gap regardless of hypothesis
    double bound = 0;           // trivial * (1 - delta)
    double max_nontrivial = 0;
};

/// Spectral-gap check at a requested delta. Hypothesis: (n+d-1) (unweighted)
/// or (n-1) (weighted) must not exceed q^(d/2) * (1-delta); when it holds,
/// all nontrivial moduli must fit under trivial * (1-delta).
inline ExpanderResult expander_check(const SpectrumReport& report, const GraphSpec& spec, double delta) {
    if (delta <= 0 || delta >= 1) throw parse_error("delta must lie in (0,1)");
    const ExtField& K = spec.ext;
    double root = std::pow(static_cast<double>(K.base().q()), spec.d / 2.0);
    double lhs = report.kind == SpectrumKind::unweighted ? K.n() + spec.d - 1.0 : K.n() - 1.0;
    ExpanderResult out;
    out.hypothesis_holds = lhs <= root * (1.0 - delta) + 1e-9;
    out.max_nontrivial = report.max_nontrivial_modulus;
    out.delta_star = report.delta_certified.value_or(0.0);
    out.bound = report.trivial_eigenvalue * (1.0 - delta);
    if (!out.hypothesis_holds) {
        out.verdict = ExpanderVerdict::hypothesis_not_met;
    } else {
        out.verdict = out.max_nontrivial <= out.bound + 1e-6 ? ExpanderVerdict::pass : ExpanderVerdict::fail;
    }
    return out;
}

/// The spectral component counter: how many eigenvalues sit at the trivial
/// value. Agrees with the algebraic and traversal counts.
inline std::uint64_t trivial_multiplicity(const SpectrumReport& report) { return report.trivial_multiplicity; }

/// CSV rows "j,re,im,abs,trivial_on_H", LF endings, deterministic order.
inline std::string spectrum_csv(const SpectrumReport& report) {
    std::string out = "j,re,im,abs,trivial_on_H\n";
    std::uint64_t h = static_cast<std::uint64_t>(report.subgroup_order);
    char buf[128];
    for (std::size_t j = 0; j < report.eigenvalues.size(); ++j) {
        const std::complex<double>& v = report.eigenvalues[j];
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%d\n", j, v.real(), v.imag(), std::abs(v),
                      j % h == 0 ? 1 : 0);
        out += buf;
    }
    return out;
}

}  // namespace cayleyff
