#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <cayleyff/cayleyff.hpp>
#include <cayleyff/spectrum_fft.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace cayleyff;

namespace {

struct Args {
    std::uint64_t p = 0;
    std::uint32_t m = 1;
    std::string base_modulus;
    std::uint32_t n = 0;
    std::string f;
    std::uint32_t d = 1;
    std::string method = "descent";
    std::string factors;
    std::string ell;
    double delta = 0;
    std::string format = "edge-list";
    std::string kind = "weighted";
    std::uint64_t seed = 0;
    std::uint32_t jobs = 1;
    bool force = false;
    bool random_f = false;
    bool timing = false;
    std::string cache_dir;
    std::string out;
    std::string n_range;
    std::string d_range;
};

std::chrono::steady_clock::time_point g_start;

double seconds_elapsed() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - g_start).count();
}

// ---------------------------------------------------------------------------
// construction helpers

BaseField make_base(const Args& a) {
    if (a.p == 0) throw parse_error("--p is required");
    std::optional<std::vector<Felt>> modulus;
    if (!a.base_modulus.empty()) {
        BaseField prime_field(a.p, 1);
        modulus = poly_parse(prime_field, a.base_modulus).coeffs;
    }
    return base_field_new(a.p, a.m, std::move(modulus));
}

Poly resolve_f(const BaseField& base, const Args& a) {
    if (!a.f.empty() && a.random_f) throw parse_error("--f and --random-f are mutually exclusive");
    if (!a.f.empty()) return poly_parse(base, a.f);
    if (a.n < 2) throw parse_error("--n >= 2 is required");
    if (a.random_f) {
        std::mt19937_64 rng(a.seed);
        std::uniform_int_distribution<std::uint64_t> coef(0, base.q() - 1);
        while (true) {
            Poly g;
            g.coeffs.resize(a.n + 1, 0);
            g.coeffs[a.n] = 1;
            for (std::uint32_t i = 0; i < a.n; ++i) g.coeffs[i] = static_cast<Felt>(coef(rng));
            if (is_irreducible(base, g)) return g;
        }
    }
    return first_irreducible(base, a.n);
}

ExtField make_ext(const BaseField& base, const Args& a) {
    Poly f = resolve_f(base, a);
    if (a.n != 0 && poly_degree(f) != static_cast<std::int64_t>(a.n))
        throw degree_mismatch("--f degree disagrees with --n");
    return ext_field_new(base, std::move(f), a.force);
}

std::optional<Factorization> factor_hint(const Args& a) {
    if (a.factors.empty()) return std::nullopt;
    return parse_factorization(a.factors);
}

Bigint parse_bigint(const std::string& text, const char* flag) {
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos)
        throw parse_error(std::string(flag) + " expects a decimal integer");
    return Bigint(text);
}

// ---------------------------------------------------------------------------
// cache: irreducible lists and log tables, keyed by the defining parameters

std::string cache_root(const Args& a) {
    if (!a.cache_dir.empty()) return a.cache_dir;
    if (const char* env = std::getenv("CAYLEYFF_CACHE")) return env;
    return "";
}

std::string field_key(const BaseField& base) {
    std::uint64_t mod_code = 0;
    for (std::size_t i = base.modulus().size(); i-- > 0;) mod_code = mod_code * base.p() + base.modulus()[i];
    return std::to_string(base.p()) + "-" + std::to_string(base.m()) + "-" + std::to_string(mod_code);
}

void atomic_write(const fs::path& path, const std::string& bytes) {
    fs::path tmp = path;
    tmp += ".tmp";
    std::ofstream out(tmp, std::ios::binary);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    fs::rename(tmp, path);
}

LogTable cached_log_table(const std::string& root, const ExtField& K, const Factorization& fact, bool force) {
    std::uint64_t N = static_cast<std::uint64_t>(K.N());
    if (root.empty()) return build_log_table(K, find_generator(K, fact), force);
    fs::create_directories(root);
    fs::path path = fs::path(root) / ("log-" + field_key(K.base()) + "-" +
                                      std::to_string(poly_code(K.base(), K.f())) + ".bin");
    if (fs::exists(path) && fs::file_size(path) == (N + 2) * sizeof(std::uint32_t)) {
        std::ifstream in(path, std::ios::binary);
        std::vector<std::uint32_t> raw(N + 2);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size() * sizeof(std::uint32_t)));
        if (in && raw[0] <= N) {
            LogTable table;
            table.generator = K.from_index(raw[0]);
            table.logs.assign(raw.begin() + 1, raw.end());
            if (table.logs[1] == 0 && table.logs[raw[0]] == 1) return table;
        }
    }
    LogTable table = build_log_table(K, find_generator(K, fact), force);
    std::vector<std::uint32_t> raw;
    raw.reserve(N + 2);
    raw.push_back(static_cast<std::uint32_t>(K.to_index(table.generator)));
    raw.insert(raw.end(), table.logs.begin(), table.logs.end());
    atomic_write(path, std::string(reinterpret_cast<const char*>(raw.data()), raw.size() * sizeof(std::uint32_t)));
    return table;
}

// ---------------------------------------------------------------------------
// json fragments

json poly_json(const Poly& g) {
    return {{"coeffs", poly_to_string(g)}, {"human", poly_to_human(g)}};
}

json fact_json(const Factorization& fact) {
    json factors = json::array();
    for (const auto& [prime, exp] : fact.factors)
        factors.push_back({{"prime", to_string(prime)}, {"exponent", exp}});
    return {{"display", fact_to_string(fact)}, {"factors", factors}};
}

json xelt_json(const ExtField& K, const Xelt& a) {
    json coeffs = json::array();
    for (Felt c : a.coeffs) coeffs.push_back(c);
    return {{"coeffs", coeffs}, {"index", static_cast<std::uint64_t>(K.to_index(a))}};
}

void emit(const json& body, bool timing_block = true) {
    json out = body;
    if (timing_block) out["timing"] = {{"seconds", seconds_elapsed()}};
    std::cout << out.dump(2) << "\n";
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw parse_error("cannot open output file: " + path);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

// ---------------------------------------------------------------------------
// subcommands

void cmd_info(const Args& a) {
    BaseField base = make_base(a);
    if (a.n < 2) throw parse_error("--n >= 2 is required");
    if (a.d < 1 || a.d >= a.n) throw degree_mismatch("--d must satisfy 1 <= d < n");
    Bigint N = pow_int(Bigint(base.q()), a.n) - 1;

    json body;
    body["p"] = base.p();
    body["m"] = base.m();
    body["q"] = base.q();
    body["n"] = a.n;
    body["d"] = a.d;
    body["N"] = to_string(N);
    body["primary_count"] = to_string(count_primary(base, a.d));
    body["irreducible_count"] = to_string(count_irreducibles(base, a.n));
    body["thm14_bound"] = to_string(theorem14_bound(base, a.n, a.d));

    bool regime1 = connected_regime(base, a.n, a.d);
    bool regime3 = false;
    if (!a.ell.empty()) {
        Bigint ell = parse_bigint(a.ell, "--ell");
        if (ell <= 1 || N % ell != 0) throw ell_does_not_divide("--ell must be a nontrivial divisor of q^n - 1");
        regime3 = detail::divisibility_hypothesis(base, a.n, a.d, ell);
        body["ell"] = to_string(ell);
    }
    body["regime"] = regime1 ? "forced-connected" : regime3 ? "divisible-guaranteed" : "gap";

    if (regime1) {
        DiameterBound db = diameter_bound(base, a.n, a.d);
        body["thm15"] = {{"bound", db.bound},
                         {"cor16_applies", db.cor16_applies},
                         {"proof_threshold", db.proof_threshold}};
    } else {
        body["thm15"] = nullptr;
    }

    if (!a.f.empty()) {
        Poly f = poly_parse(base, a.f);
        if (poly_degree(f) != static_cast<std::int64_t>(a.n)) throw degree_mismatch("--f degree disagrees with --n");
        if (!poly_is_monic(f)) throw not_monic(poly_to_string(f));
        if (!is_irreducible(base, f)) throw reducible_modulus(poly_to_string(f));
        body["f"] = poly_json(f);
    } else {
        body["f"] = nullptr;
    }
    emit(body);
}

void cmd_components(const Args& a) {
    BaseField base = make_base(a);
    ExtField K = make_ext(base, a);
    GraphSpec spec(K, a.d);
    Factorization fact = factor(K.N(), factor_hint(a));
    std::string root = cache_root(a);

    auto run_method = [&](const std::string& name) -> std::pair<Bigint, json> {
        if (name == "bfs") return {components_bfs(spec), json::object()};
        if (name == "closure") {
            SubgroupDescriptor sd = subgroup_closure(spec);
            return {sd.index, {{"subgroup_order", to_string(sd.order)}}};
        }
        if (name == "descent") {
            DescentResult dr = components_descent(spec, fact, true);
            json chain = json::array();
            for (const Bigint& w : dr.witness_chain) chain.push_back(to_string(w));
            return {dr.index, {{"witness_chain", chain}}};
        }
        if (name == "lcm") return {components_order_lcm(spec, fact), json::object()};
        if (name == "spectrum") {
            LogTable table = cached_log_table(root, K, fact, a.force);
            SpectrumReport rep = eigenvalues(spec, table, SpectrumKind::unweighted);
            return {rep.subgroup_index, {{"trivial_multiplicity", rep.trivial_multiplicity}}};
        }
        throw parse_error("--method must be bfs|closure|descent|lcm|spectrum|all");
    };

    json body;
    body["f"] = poly_json(K.f());
    body["N"] = to_string(K.N());
    body["factorization"] = fact_json(fact);
    body["method"] = a.method;

    if (a.method == "all") {
        static const char* names[] = {"bfs", "closure", "descent", "lcm", "spectrum"};
        json results;
        std::optional<Bigint> agreed;
        for (const char* name : names) {
            auto [count, meta] = run_method(name);
            meta["components"] = to_string(count);
            results[name] = meta;
            if (agreed && *agreed != count)
                throw theorem_violation(std::string("method disagreement: ") + name + " reports " + to_string(count) +
                                        " against " + to_string(*agreed));
            agreed = count;
        }
        body["components"] = to_string(*agreed);
        body["results"] = results;
    } else {
        auto [count, meta] = run_method(a.method);
        body["components"] = to_string(count);
        body.update(meta);
    }
    emit(body);
}

void cmd_spectrum(const Args& a) {
    if (a.kind != "weighted" && a.kind != "unweighted")
        throw parse_error("--kind must be weighted or unweighted");
    SpectrumKind kind = a.kind == "weighted" ? SpectrumKind::weighted : SpectrumKind::unweighted;
    BaseField base = make_base(a);
    ExtField K = make_ext(base, a);
    GraphSpec spec(K, a.d);
    Factorization fact = factor(K.N(), factor_hint(a));
    LogTable table = cached_log_table(cache_root(a), K, fact, a.force);

    bool transform = K.N() > 4096;  // dense FFT pays off once the direct sum is quadratic-large
    SpectrumReport rep = transform ? eigenvalues_transform(spec, table, kind) : eigenvalues(spec, table, kind);

    std::string out_path = a.out.empty() ? "spectrum.csv" : a.out;
    write_file(out_path, spectrum_csv(rep));

    json body;
    body["f"] = poly_json(K.f());
    body["kind"] = a.kind;
    body["engine"] = transform ? "transform" : "direct";
    body["csv"] = out_path;
    body["trivial_eigenvalue"] = rep.trivial_eigenvalue;
    body["trivial_multiplicity"] = rep.trivial_multiplicity;
    body["max_nontrivial_modulus"] = rep.max_nontrivial_modulus;
    body["weil_bound"] = rep.weil_bound;
    body["thm17_bound"] = rep.thm17_bound;
    body["subgroup_order"] = to_string(rep.subgroup_order);
    body["components"] = to_string(rep.subgroup_index);
    body["generator"] = xelt_json(K, rep.generator);
    if (rep.delta_certified) body["delta_star"] = *rep.delta_certified;
    if (kind == SpectrumKind::weighted) {
        WeilResult weil = weil_check(rep, spec);
        body["weil"] = {{"pass", weil.pass}, {"margin", weil.margin}, {"max_abs", weil.max_abs}, {"bound", weil.bound}};
    }
    if (a.delta > 0) {
        ExpanderResult ex = expander_check(rep, spec, a.delta);
        const char* verdict = ex.verdict == ExpanderVerdict::pass ? "pass"
                              : ex.verdict == ExpanderVerdict::fail ? "fail"
                                                                    : "hypothesis-not-met";
        body["expander"] = {{"delta", a.delta},
                            {"verdict", verdict},
                            {"hypothesis_holds", ex.hypothesis_holds},
                            {"bound", ex.bound},
                            {"max_nontrivial", ex.max_nontrivial}};
    }
    emit(body);
}

void cmd_diameter(const Args& a) {
    BaseField base = make_base(a);
    ExtField K = make_ext(base, a);
    GraphSpec spec(K, a.d);
    Factorization fact = factor(K.N(), factor_hint(a));

    json body;
    body["f"] = poly_json(K.f());
    if (connected_regime(base, K.n(), a.d)) {
        DiameterBound db = diameter_bound(spec);
        DiameterVerification v = verify_diameter(spec, fact);
        body["regime"] = "forced-connected";
        body["diameter"] = v.actual;
        body["bound"] = v.bound;
        body["ok"] = v.ok;
        body["cor16_applies"] = db.cor16_applies;
        body["proof_threshold"] = db.proof_threshold;
    } else {
        DescentResult dr = components_descent(spec, fact);
        body["regime"] = "gap";
        body["components"] = to_string(dr.index);
        body["bound"] = nullptr;
        if (dr.index == 1) {
            std::optional<std::uint32_t> D = diameter_bfs(spec);
            if (!D) throw internal_error("connected instance with unreachable vertices");
            body["diameter"] = *D;
        } else {
            body["diameter"] = nullptr;
        }
    }
    emit(body);
}

void cmd_search(const Args& a) {
    BaseField base = make_base(a);
    if (a.ell.empty()) throw parse_error("--ell is required");
    Bigint ell = parse_bigint(a.ell, "--ell");
    SearchResult result = search_disconnected(base, a.n, a.d, ell, factor_hint(a));

    std::string out_path = a.out.empty() ? "search_hits.txt" : a.out;
    std::string lines;
    for (const auto& [f, count] : result.hits) lines += poly_to_string(f) + "\t" + to_string(count) + "\n";
    write_file(out_path, lines);

    json hits = json::array();
    for (const auto& [f, count] : result.hits) {
        json h = poly_json(f);
        h["components"] = to_string(count);
        hits.push_back(h);
    }
    emit({{"ell", to_string(ell)},
          {"hypothesis_holds", result.hypothesis_holds},
          {"scanned", result.scanned},
          {"hits", hits},
          {"hits_file", out_path}});
}

std::vector<std::uint32_t> parse_range(const std::string& text, const char* flag) {
    std::vector<std::uint32_t> out;
    std::stringstream ss(text);
    std::string piece;
    while (std::getline(ss, piece, ',')) {
        std::size_t dash = piece.find('-');
        try {
            if (dash == std::string::npos) {
                out.push_back(static_cast<std::uint32_t>(std::stoul(piece)));
            } else {
                std::uint32_t lo = static_cast<std::uint32_t>(std::stoul(piece.substr(0, dash)));
                std::uint32_t hi = static_cast<std::uint32_t>(std::stoul(piece.substr(dash + 1)));
                if (hi < lo) throw parse_error(std::string(flag) + ": empty range " + piece);
                for (std::uint32_t v = lo; v <= hi; ++v) out.push_back(v);
            }
        } catch (const std::logic_error&) {
            throw parse_error(std::string(flag) + " expects values like 4 or 3-6 or 3,5");
        }
    }
    if (out.empty()) throw parse_error(std::string(flag) + " is required");
    return out;
}

void cmd_sweep(const Args& a) {
    BaseField base = make_base(a);
    std::vector<std::uint32_t> ns = parse_range(a.n_range, "--n");
    std::vector<std::uint32_t> ds = parse_range(a.d_range, "--d");

    std::vector<SweepCell> cells;
    for (std::uint32_t n : ns)
        for (std::uint32_t d : ds)
            if (d >= 1 && d < n) cells.push_back({n, d});
    if (cells.empty()) throw parse_error("the (n, d) grid is empty after removing cells with d >= n");

    SweepOptions opt;
    if (!a.ell.empty()) opt.ell = parse_bigint(a.ell, "--ell");
    opt.timing = a.timing;
    opt.jobs = a.jobs;
    SweepReport rep = connectivity_sweep(base, cells, opt);

    std::string out_path = a.out.empty() ? "sweep.csv" : a.out;
    write_file(out_path, sweep_csv(rep));

    json rows = json::array();
    for (const SweepRow& row : rep.rows) {
        json r;
        r["q"] = row.q;
        r["n"] = row.n;
        r["d"] = row.d;
        r["f"] = poly_json(row.f);
        r["regime"] = row.regime;
        r["components"] = to_string(row.components);
        r["thm14_bound"] = to_string(row.bound_components);
        r["diameter"] = row.diameter ? json(*row.diameter) : json(nullptr);
        r["diameter_bound"] = row.diameter_bound_value ? json(*row.diameter_bound_value) : json(nullptr);
        r["delta_star"] = row.delta_star ? json(*row.delta_star) : json(nullptr);
        if (a.timing) r["seconds"] = row.seconds;
        rows.push_back(r);
    }
    json factorizations;
    for (std::uint32_t n : ns) {
        Bigint N = pow_int(Bigint(base.q()), n) - 1;
        factorizations[std::to_string(n)] = fact_json(factor(N));
    }
    emit({{"csv", out_path},
          {"seed", a.seed},
          {"rows", rows},
          {"factorizations", factorizations}});
}

void cmd_export(const Args& a) {
    BaseField base = make_base(a);
    ExtField K = make_ext(base, a);
    GraphSpec spec(K, a.d);
    std::string text = export_graph(spec, a.format);

    std::string out_path = a.out;
    if (out_path.empty()) {
        out_path = a.format == "dot" ? "graph.dot" : a.format == "adjacency-csv" ? "graph.csv" : "graph.edges";
    }
    write_file(out_path, text);
    emit({{"f", poly_json(K.f())},
          {"format", a.format},
          {"path", out_path},
          {"vertices", to_string(K.N())},
          {"edges", to_string(K.N() * count_primary(base, a.d))}});
}

void add_common_flags(CLI::App* cmd, Args& a, bool with_f = true, bool with_d = true) {
    cmd->add_option("--p", a.p, "characteristic of the base field (prime)");
    cmd->add_option("--m", a.m, "base field extension degree over F_p (q = p^m)");
    cmd->add_option("--base-modulus", a.base_modulus, "monic irreducible modulus over F_p when m > 1");
    if (with_d) cmd->add_option("--d", a.d, "connection set degree");
    cmd->add_option("--factors", a.factors, "factorization hint for q^n - 1, e.g. \"3^2 * 5 * 7 * 13\"");
    cmd->add_option("--seed", a.seed, "deterministic seed for sampling");
    cmd->add_option("--jobs", a.jobs, "worker pool size")->check(CLI::PositiveNumber);
    cmd->add_flag("--force", a.force, "override the table size guard");
    cmd->add_option("--cache-dir", a.cache_dir, "cache directory (default: CAYLEYFF_CACHE)");
    if (with_f) {
        cmd->add_option("--n", a.n, "extension degree of the graph field");
        cmd->add_option("--f", a.f, "defining polynomial, e.g. \"[1,1,0,0,1]\" or \"x^4+x+1\"");
        cmd->add_flag("--random-f", a.random_f, "sample f uniformly among irreducibles (uses --seed)");
    }
}

}  // namespace

int main(int argc, char** argv) {
    g_start = std::chrono::steady_clock::now();
    CLI::App app{"Cayley graphs on finite field extensions with primary polynomial connection sets"};
    app.require_subcommand(1);
    Args a;

    CLI::App* info = app.add_subcommand("info", "counting formulas, regime, and bounds without building the graph");
    add_common_flags(info, a);
    info->add_option("--ell", a.ell, "divisor of q^n - 1 for the divisibility regime check");
    info->callback([&] { cmd_info(a); });

    CLI::App* components = app.add_subcommand("components", "component count by one or all methods");
    add_common_flags(components, a);
    components->add_option("--method", a.method, "bfs|closure|descent|lcm|spectrum|all");
    components->callback([&] { cmd_components(a); });

    CLI::App* spectrum = app.add_subcommand("spectrum", "full eigenvalue list, bounds, and CSV export");
    add_common_flags(spectrum, a);
    spectrum->add_option("--kind", a.kind, "weighted|unweighted");
    spectrum->add_option("--delta", a.delta, "expander check at this spectral gap")->check(CLI::Range(0.0, 1.0));
    spectrum->add_option("--out", a.out, "CSV output path (default spectrum.csv)");
    spectrum->callback([&] { cmd_spectrum(a); });

    CLI::App* diameter = app.add_subcommand("diameter", "BFS diameter against the forced-connected bound");
    add_common_flags(diameter, a);
    diameter->callback([&] { cmd_diameter(a); });

    CLI::App* search = app.add_subcommand("search", "scan all f of degree n for ell-divisible component counts");
    add_common_flags(search, a, false);
    search->add_option("--n", a.n, "extension degree of the graph field");
    search->add_option("--ell", a.ell, "target divisor of the component count")->required();
    search->add_option("--out", a.out, "hits file path (default search_hits.txt)");
    search->callback([&] { cmd_search(a); });

    CLI::App* sweep = app.add_subcommand("sweep", "component counts and bounds over an (n, d) grid");
    add_common_flags(sweep, a, false, false);
    sweep->add_option("--n", a.n_range, "n values, e.g. 4 or 3-6 or 3,5")->required();
    sweep->add_option("--d", a.d_range, "d values, e.g. 1 or 1-2")->required();
    sweep->add_option("--ell", a.ell, "regime divisor (default: smallest prime of q^n - 1)");
    sweep->add_flag("--timing", a.timing, "record real per-row seconds in the CSV");
    sweep->add_option("--out", a.out, "CSV output path (default sweep.csv)");
    sweep->callback([&] { cmd_sweep(a); });

    CLI::App* exportc = app.add_subcommand("export", "write the graph as edge-list, dot, or adjacency-csv");
    add_common_flags(exportc, a);
    exportc->add_option("--format", a.format, "edge-list|dot|adjacency-csv");
    exportc->add_option("--out", a.out, "output path (default graph.<format extension>)");
    exportc->callback([&] { cmd_export(a); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const InputError& e) {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump(2) << "\n";
        return 2;
    } catch (const AssertionError& e) {
        std::cerr << json{{"error", e.code()}, {"message", e.what()}}.dump(2) << "\n";
        return 1;
    }
    return 0;
}
