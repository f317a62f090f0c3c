#include "nilzeta/cli.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nilzeta/acceptance.hpp"
#include "nilzeta/geometry.hpp"
#include "nilzeta/json_io.hpp"
#include "nilzeta/lemmas.hpp"

namespace nilzeta {

using ojson = nlohmann::ordered_json;

void RunConfig::validate() const {
    parse_group(group);
    for (int q : primes)
        if (q != 2 && q != 3 && q != 5) throw std::invalid_argument("primes are restricted to 2, 3 and 5");
    if (N < 0 || N > 24) throw std::invalid_argument("truncation N must lie in 0..24");
    if (!(budget > 0)) throw std::invalid_argument("budget must be positive");
    if (budget > kDefaultBudget && !allow_large_budget)
        throw std::invalid_argument("budget above 2e7 needs --allow-large-budget");
    if (format != "text" && format != "json") throw std::invalid_argument("format must be text or json");
    if (threads < 1) throw std::invalid_argument("threads must be at least 1");
}

ResultCache RunConfig::cache() const {
    if (no_cache) return ResultCache{};
    return ResultCache{cache_dir.empty() ? ResultCache::default_dir() : std::filesystem::path(cache_dir)};
}

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point t0) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
}

ojson big(const BigInt &x) { return ojson(bigint_json(x)); }

ojson big_array(const std::vector<BigInt> &v) {
    ojson a = ojson::array();
    for (const auto &x : v) a.push_back(big(x));
    return a;
}

std::string join_ints(const std::vector<BigInt> &v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].get_str();
    return s;
}

void emit(const RunConfig &cfg, const ojson &j, const std::string &text) {
    if (cfg.json())
        std::cout << j.dump() << "\n";
    else
        std::cout << text << (text.empty() || text.back() == '\n' ? "" : "\n");
}

// zeta output, optionally wrapped as {group, operation, inputs, result, verified, details}.
void emit_zeta(const RunConfig &cfg, const std::string &op, const ojson &result, const std::string &text,
               bool verified, ojson details = ojson::object()) {
    if (!cfg.envelope) {
        emit(cfg, result, text);
        return;
    }
    ojson inputs{{"group", cfg.group}};
    if (!cfg.primes.empty()) inputs["prime"] = cfg.primes;
    if (cfg.N > 0) inputs["upto"] = cfg.N;
    emit(cfg,
         ojson{{"group", cfg.group},
               {"operation", op},
               {"inputs", inputs},
               {"result", result},
               {"verified", verified},
               {"details", details}},
         text);
}

int single_prime(const RunConfig &cfg) {
    if (cfg.primes.size() != 1) throw std::invalid_argument("exactly one --prime is required");
    return cfg.primes.front();
}

BigInt eval_at(const LaurentPoly &f, int q) {
    BigRat v = f.at(BigInt(q));
    if (v.get_den() != 1) throw std::logic_error("expected an integral value");
    return v.get_num();
}

std::vector<int> parse_int_list(const std::string &s) {
    std::vector<int> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(std::stoi(item));
    return out;
}

// ---- zeta ----

int zeta_show(const RunConfig &cfg) {
    const GroupSpec g = parse_group(cfg.group);
    RatFun z = zeta_local(g.group);
    nlohmann::json rf = z;
    emit_zeta(cfg, "show", ojson{{"group", g.name}, {"text", to_string(z)}, {"ratfun", ojson::parse(rf.dump())}},
              to_string(z), true);
    return kExitOk;
}

int zeta_series(const RunConfig &cfg) {
    const GroupSpec g = parse_group(cfg.group);
    if (cfg.primes.empty()) {
        auto s = series_coeffs(g.group, cfg.N).coeffs;
        ojson a = ojson::array();
        std::string text;
        for (int n = 0; n <= cfg.N; ++n) {
            a.push_back(to_string(s[n]));
            text += "a_{p^" + std::to_string(n) + "} = " + to_string(s[n]) + "\n";
        }
        emit_zeta(cfg, "series", a, text, true);
        return kExitOk;
    }
    auto c = formula_counts(g.group, single_prime(cfg), cfg.N);
    emit_zeta(cfg, "series", big_array(c), join_ints(c), true);
    return kExitOk;
}

int zeta_check_fe(const RunConfig &cfg) {
    const GroupSpec g = parse_group(cfg.group);
    auto fe = check_functional_equation(g.group);
    ojson j{{"sign", fe.sign}, {"p_exp", fe.p_exp}, {"t_exp", fe.t_exp}, {"verified", fe.verified}};
    std::string text = fe.found ? g.name + ": Z(1/p, 1/T) = " + std::string(fe.sign < 0 ? "-" : "") + "p^" +
                                      std::to_string(fe.p_exp) + " T^" + std::to_string(fe.t_exp) + " Z(p, T)" +
                                      (fe.verified ? "" : " (unverified)")
                                : g.name + ": no monomial functional equation";
    emit_zeta(cfg, "check-fe", j, text, fe.found && fe.verified);
    return fe.found && fe.verified ? kExitOk : kExitCheckFailed;
}

int zeta_abscissa(const RunConfig &cfg) {
    const GroupSpec g = parse_group(cfg.group);
    const int N = cfg.N == 0 ? 12 : cfg.N;
    BigRat a = abscissa_estimate(g.group, N);
    emit_zeta(cfg, "abscissa", ojson{{"group", g.name}, {"N", N}, {"abscissa", a.get_str()}}, g.name + ": " + a.get_str(),
              true);
    return kExitOk;
}

int zeta_lemmas(const RunConfig &cfg) {
    LemmaSuite s = lemma_suite();
    ojson lem = ojson::array(), inv = ojson::array();
    std::ostringstream text;
    for (const auto &c : s.lemmas) {
        lem.push_back({{"name", c.name},
                       {"range", c.range},
                       {"instances", c.instances},
                       {"failures", c.failures},
                       {"first_failure", c.first_failure},
                       {"passed", c.passed()}});
        text << (c.passed() ? "PASS  " : "FAIL  ") << c.name << " (" << c.instances << " instances; " << c.range
             << ")\n";
    }
    for (const auto &c : s.inversions) {
        inv.push_back({{"name", c.name},
                       {"sign", c.observed.sign},
                       {"p_exp", c.observed.p_exp},
                       {"t_exp", c.observed.t_exp},
                       {"expected", {{"sign", c.expected_sign}, {"p_exp", c.expected_p}, {"t_exp", c.expected_t}}},
                       {"passed", c.passed()}});
        text << (c.passed() ? "PASS  " : "FAIL  ") << "inversion " << c.name << " -> "
             << (c.observed.sign < 0 ? "-" : "+") << "p^" << c.observed.p_exp << "\n";
    }
    emit_zeta(cfg, "lemmas", ojson{{"passed", s.passed()}, {"lemmas", lem}, {"inversions", inv}}, text.str(), s.passed());
    return s.passed() ? kExitOk : kExitCheckFailed;
}

// ---- oracle ----

int oracle_count(const RunConfig &cfg, bool direct) {
    const GroupSpec g = parse_group(cfg.group);
    const int q = single_prime(cfg);
    if (direct && cfg.N > 2) throw std::invalid_argument("oracle direct: --upto must be at most 2");
    auto t0 = Clock::now();
    const auto spec = lie_ring(g.group);
    ResultCache cache = cfg.cache();
    std::vector<BigInt> counts = direct ? cached_direct_counts(spec, q, cfg.N, cfg.oracle(), cache)
                                        : cached_central_counts(spec, q, cfg.N, cfg.oracle(), cache).counts;
    auto formula = formula_counts(g.group, q, cfg.N);
    const bool match = counts == formula;
    ojson j{{"inputs", {{"group", g.name}, {"prime", q}, {"upto", cfg.N}, {"method", direct ? "direct" : "central"}}},
            {"counts", big_array(counts)},
            {"formula_counts", big_array(formula)},
            {"match", match},
            {"runtime_ms", ms_since(t0)}};
    emit(cfg, j,
         "oracle:  " + join_ints(counts) + "\nformula: " + join_ints(formula) + "\n" + (match ? "match" : "MISMATCH"));
    return match ? kExitOk : kExitCheckFailed;
}

int oracle_weights(const RunConfig &cfg, const std::string &case_name, const std::string &r_text) {
    const int q = single_prime(cfg);
    WeightCase wc = parse_weight_case(case_name);
    std::vector<int> r = parse_int_list(r_text);
    auto t0 = Clock::now();
    WeightReport rep = verify_weight_lemma(wc, q, r);
    ojson hist = ojson::array();
    std::string text = to_string(wc) + " q=" + std::to_string(q) + ": " + std::to_string(rep.tuples) + " tuples (" +
                       (rep.exhaustive ? "exhaustive" : "stratified sample") + "), " +
                       std::to_string(rep.mismatch_count) + " mismatches\n";
    for (const auto &[w, c] : rep.histogram) {
        hist.push_back({{"wprime", w}, {"count", c}});
        text += "  w' = " + std::to_string(w) + ": " + std::to_string(c) + "\n";
    }
    ojson mism = ojson::array();
    for (const auto &m : rep.mismatches) mism.push_back({{"alpha", m.alpha}, {"observed", m.observed}, {"predicted", m.predicted}});
    ojson j{{"inputs", {{"case", to_string(wc)}, {"prime", q}, {"r", r}}},
            {"tuples", rep.tuples},
            {"exhaustive", rep.exhaustive},
            {"histogram", hist},
            {"mismatch_count", rep.mismatch_count},
            {"mismatches", mism},
            {"match", rep.mismatch_count == 0},
            {"runtime_ms", ms_since(t0)}};
    emit(cfg, j, text);
    return rep.mismatch_count == 0 ? kExitOk : kExitCheckFailed;
}

int oracle_multiplicity(const RunConfig &cfg, int bound) {
    const int q = single_prime(cfg);
    auto t0 = Clock::now();
    MultiplicityReport rep = verify_multiplicity(q, bound, cfg.oracle());
    ojson rows = ojson::array();
    std::string text;
    for (const auto &row : rep.rows) {
        rows.push_back({{"k", row.k},
                        {"type", row.type.to_string()},
                        {"scalar", row.scalar},
                        {"observed", row.observed},
                        {"predicted", big(row.predicted)}});
        text += "k=" + std::to_string(row.k) + " type " + row.type.to_string() + " scalar " +
                std::to_string(row.scalar) + ": " + std::to_string(row.observed) + " vs " + row.predicted.get_str() +
                "\n";
    }
    text += std::to_string(rep.mismatches) + " mismatches";
    ojson j{{"inputs", {{"prime", q}, {"bound", bound}}},
            {"rows", rows},
            {"mismatches", rep.mismatches},
            {"match", rep.mismatches == 0},
            {"runtime_ms", ms_since(t0)}};
    emit(cfg, j, text);
    return rep.mismatches == 0 ? kExitOk : kExitCheckFailed;
}

// ---- geometry ----

int geometry_cmd(const RunConfig &cfg, const std::string &what, int m, const std::string &I_text) {
    const int q = single_prime(cfg);
    if (what == "points" || what == "lines" || what == "planes") {
        const int dim = what == "points" ? 0 : what == "lines" ? 1 : 2;
        auto s = enumerate_quadric(q, dim, cfg.budget);
        BigInt formula = dim == 2 ? BigInt(2 * eval_at(fano(3).count_poly, q)) : eval_at(fano(dim + 1).count_poly, q);
        const BigInt count(static_cast<long>(s.size()));
        emit(cfg, ojson{{"count", big(count)}, {"formula", big(formula)}},
             what + " on the quadric over F_" + std::to_string(q) + ": " + count.get_str() + " (formula " +
                 formula.get_str() + ")");
        return count == formula ? kExitOk : kExitCheckFailed;
    }
    if (what == "rulings") {
        Rulings ru = classify_rulings(enumerate_quadric(q, 2, cfg.budget));
        std::set<int> ra, rb;
        for (const auto &pl : ru.a) ra.insert(stacked_rank(pl.rows, q));
        for (const auto &pl : ru.b) rb.insert(stacked_rank(pl.rows, q));
        const BigInt formula = eval_at(fano(3).count_poly, q);
        const bool ok = BigInt(static_cast<long>(ru.a.size())) == formula &&
                        BigInt(static_cast<long>(ru.b.size())) == formula;
        emit(cfg,
             ojson{{"a", ru.a.size()},
                   {"b", ru.b.size()},
                   {"formula", big(formula)},
                   {"stacked_rank_a", std::vector<int>(ra.begin(), ra.end())},
                   {"stacked_rank_b", std::vector<int>(rb.begin(), rb.end())}},
             "ruling A: " + std::to_string(ru.a.size()) + ", ruling B: " + std::to_string(ru.b.size()) + " (formula " +
                 formula.get_str() + ")");
        return ok ? kExitOk : kExitCheckFailed;
    }
    if (what == "flags") {
        FlagType ft{m, parse_int_list(I_text)};
        ft.validate();
        const BigInt count(static_cast<long>(count_flags_brute(q, ft, cfg.budget)));
        const BigInt formula = eval_at(flag_count(ft), q);
        emit(cfg, ojson{{"count", big(count)}, {"formula", big(formula)}},
             "flags: " + count.get_str() + " (formula " + formula.get_str() + ")");
        return count == formula ? kExitOk : kExitCheckFailed;
    }
    throw std::invalid_argument("--count must be points, lines, planes, rulings or flags");
}

// ---- combinat ----

int combinat_poly(const RunConfig &cfg, const LaurentPoly &f) {
    ojson j{{"poly", to_string(f)}};
    std::string text = to_string(f);
    if (!cfg.primes.empty()) {
        BigInt v = eval_at(f, single_prime(cfg));
        j["value"] = big(v);
        text += " = " + v.get_str();
    }
    emit(cfg, j, text);
    return kExitOk;
}

LatticeType parse_type(const std::string &s) {
    LatticeType t;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos) throw std::invalid_argument("type entries look like i:r_i");
        int i = std::stoi(item.substr(0, colon)), r = std::stoi(item.substr(colon + 1));
        if (i < 1 || i > 5 || r < 1) throw std::invalid_argument("type entries need 1 <= i <= 5 and r_i >= 1");
        t.r[i] = r;
    }
    return t;
}

// ---- verify-all ----

int verify_all(const RunConfig &cfg, bool timing) {
    AcceptanceConfig ac{cfg.oracle(), cfg.cache()};
    auto results = run_acceptance(ac, [&](const CriterionResult &r) {
        if (!cfg.json()) std::cout << format_line(r) << std::endl;
    });
    if (cfg.json()) std::cout << verdict_json(results, timing).dump() << "\n";
    return all_hard_passed(results) ? kExitOk : kExitCheckFailed;
}

} // namespace

int run_cli(int argc, char **argv) {
    CLI::App app{"Local normal zeta functions of free class-two nilpotent groups"};
    app.fallthrough();
    app.require_subcommand(1);
    RunConfig cfg;
    bool json_flag = false;
    app.add_flag("--json", json_flag, "Shorthand for --format json");
    app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"text", "json"}));
    app.add_option("--budget", cfg.budget, "Enumeration budget (default 2e7)");
    app.add_flag("--allow-large-budget", cfg.allow_large_budget, "Permit a budget above 2e7");
    app.add_option("--cache-dir", cfg.cache_dir, std::string("Oracle cache directory (env ") + kCacheDirEnv + ")");
    app.add_flag("--no-cache", cfg.no_cache, "Disable the oracle cache");
    app.add_option("--threads", cfg.threads, "Parallelism degree for the oracle");
    app.add_flag("--envelope", cfg.envelope, "Wrap zeta output as {group, operation, inputs, result, verified, details}");

    std::function<int()> action;
    auto add_group = [&](CLI::App *c) { c->add_option("--group", cfg.group, "F22, F23 or F24"); };
    auto add_prime = [&](CLI::App *c, bool required) {
        auto *o = c->add_option("--prime", cfg.primes, "Prime (2, 3 or 5)");
        if (required) o->required();
    };
    auto add_upto = [&](CLI::App *c, bool required) {
        auto *o = c->add_option("--upto,-N", cfg.N, "Truncation order");
        if (required) o->required();
    };

    auto *zeta = app.add_subcommand("zeta", "Structural formula");
    zeta->require_subcommand(1);
    auto *z_show = zeta->add_subcommand("show", "Print the local zeta function");
    add_group(z_show);
    z_show->callback([&] { action = [&] { return zeta_show(cfg); }; });
    auto *z_series = zeta->add_subcommand("series", "Series coefficients a_{p^n}");
    add_group(z_series);
    add_prime(z_series, false);
    add_upto(z_series, true);
    z_series->callback([&] { action = [&] { return zeta_series(cfg); }; });
    auto *z_fe = zeta->add_subcommand("check-fe", "Functional equation");
    add_group(z_fe);
    z_fe->callback([&] { action = [&] { return zeta_check_fe(cfg); }; });
    auto *z_abs = zeta->add_subcommand("abscissa", "Abscissa estimate from the series");
    add_group(z_abs);
    add_upto(z_abs, false);
    z_abs->callback([&] { action = [&] { return zeta_abscissa(cfg); }; });
    auto *z_lem = zeta->add_subcommand("lemmas", "Summation, extraction and inversion identities");
    z_lem->callback([&] { action = [&] { return zeta_lemmas(cfg); }; });

    auto *oracle = app.add_subcommand("oracle", "Brute-force oracles");
    oracle->require_subcommand(1);
    auto *o_count = oracle->add_subcommand("count", "Normal subgroup counts via central lattices");
    add_group(o_count);
    add_prime(o_count, true);
    add_upto(o_count, true);
    o_count->callback([&] { action = [&] { return oracle_count(cfg, false); }; });
    auto *o_direct = oracle->add_subcommand("direct", "Ideal counts in the full Lie ring (n <= 2)");
    add_group(o_direct);
    add_prime(o_direct, true);
    add_upto(o_direct, true);
    o_direct->callback([&] { action = [&] { return oracle_count(cfg, true); }; });
    std::string wcase, r_text = "1";
    auto *o_w = oracle->add_subcommand("weights", "Weight-function lemmas");
    o_w->add_option("--case", wcase, "generic, point, line, point-line, plane-A, plane-B or mixed-r3")->required();
    o_w->add_option("--r", r_text, "Comma-separated r-values, each 1 or 2");
    add_prime(o_w, true);
    o_w->callback([&] { action = [&] { return oracle_weights(cfg, wcase, r_text); }; });
    int bound = 3;
    auto *o_m = oracle->add_subcommand("multiplicity", "Lattice-type multiplicities");
    add_prime(o_m, true);
    o_m->add_option("--bound", bound, "Largest index exponent");
    o_m->callback([&] { action = [&] { return oracle_multiplicity(cfg, bound); }; });

    std::string what, I_text;
    int flag_m = 5;
    auto *geo = app.add_subcommand("geometry", "Linear spaces on the Pfaffian quadric");
    add_prime(geo, true);
    geo->add_option("--count", what, "points, lines, planes, rulings or flags")->required();
    geo->add_option("--m", flag_m, "Projective dimension for --count flags");
    geo->add_option("--I", I_text, "Flag indices for --count flags, e.g. 1,3");
    geo->callback([&] { action = [&] { return geometry_cmd(cfg, what, flag_m, I_text); }; });

    auto *comb = app.add_subcommand("combinat", "Flag counts, mu and sublattice counts");
    comb->require_subcommand(1);
    int cm = 5, ca = 1, cb = 1, cd = 6, ck = 1;
    std::string cI, ctype;
    auto *c_flags = comb->add_subcommand("flags", "b_I in P^m");
    c_flags->add_option("--m", cm)->required();
    c_flags->add_option("--I", cI)->required();
    add_prime(c_flags, false);
    c_flags->callback([&] {
        action = [&] {
            FlagType ft{cm, parse_int_list(cI)};
            ft.validate();
            return combinat_poly(cfg, flag_count(ft));
        };
    });
    auto *c_mu = comb->add_subcommand("mu", "mu(a, b)");
    c_mu->add_option("--a", ca)->required();
    c_mu->add_option("--b", cb)->required();
    add_prime(c_mu, false);
    c_mu->callback([&] { action = [&] { return combinat_poly(cfg, mu(ca, cb)); }; });
    auto *c_sub = comb->add_subcommand("sublattices", "Sublattices of Z^d of index p^k");
    c_sub->add_option("--d", cd)->required();
    c_sub->add_option("--k", ck)->required();
    add_prime(c_sub, false);
    c_sub->callback([&] { action = [&] { return combinat_poly(cfg, sublattice_count(cd, ck)); }; });
    auto *c_type = comb->add_subcommand("type-count", "Maximal lattices of a type in Z^6");
    c_type->add_option("--type", ctype, "e.g. 1:1,3:2")->required();
    add_prime(c_type, false);
    c_type->callback([&] { action = [&] { return combinat_poly(cfg, lattice_type_count(parse_type(ctype))); }; });

    bool timing = false;
    auto *va = app.add_subcommand("verify-all", "Run every acceptance criterion");
    va->add_flag("--timing", timing, "Include per-criterion runtimes in JSON");
    va->callback([&] { action = [&] { return verify_all(cfg, timing); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }
    try {
        if (json_flag) cfg.format = "json";
        cfg.validate();
        return action ? action() : kExitUsage;
    } catch (const BudgetExceeded &e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
}

} // namespace nilzeta
