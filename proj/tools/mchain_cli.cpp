// Batch experiment runner over the library: deterministic, seeded trials
// with JSON (or CSV summary) reports. Exit codes: 0 success, 1 a verified
// invariant failed (the report names it), 2 invalid configuration.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "mchain/coupling.hpp"
#include "mchain/generators.hpp"
#include "mchain/json_io.hpp"
#include "mchain/valuation.hpp"

using namespace mchain;

namespace {

struct Options {
    std::uint64_t seed = 0;
    int trials = 10;
    int grid_n = 8;
    std::string alpha = "1/2";
    int size = 20;
    int probes = 100;
    std::string out;
    std::string format = "json";
    std::string config_path;
    Json config; // parsed config file, overrides flags
};

void add_common_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--seed", opt.seed, "random seed");
    cmd->add_option("--trials", opt.trials, "number of trials");
    cmd->add_option("--grid-n", opt.grid_n, "grid parameter n");
    cmd->add_option("--alpha", opt.alpha, "alpha as p/q");
    cmd->add_option("--size", opt.size, "instance size");
    cmd->add_option("--probes", opt.probes, "probe count");
    cmd->add_option("--out", opt.out, "output path (default stdout)");
    cmd->add_option("--format", opt.format, "json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--config", opt.config_path, "JSON config file; overrides flags");
}

void apply_config(Options& opt) {
    if (opt.config_path.empty()) return;
    std::ifstream in(opt.config_path);
    if (!in) throw ParseError("cannot open config file: " + opt.config_path);
    opt.config = Json::parse(in, nullptr, true, false);
    auto get = [&](const char* key, auto& slot) {
        if (opt.config.contains(key)) slot = opt.config[key].template get<std::decay_t<decltype(slot)>>();
    };
    get("seed", opt.seed);
    get("trials", opt.trials);
    get("grid-n", opt.grid_n);
    get("alpha", opt.alpha);
    get("size", opt.size);
    get("probes", opt.probes);
    get("out", opt.out);
    get("format", opt.format);
}

Json base_report(const std::string& command, const Options& opt) {
    return Json{{"schema_version", 1},
                {"command", command},
                {"params",
                 {{"seed", opt.seed},
                  {"trials", opt.trials},
                  {"grid_n", opt.grid_n},
                  {"alpha", opt.alpha},
                  {"size", opt.size},
                  {"probes", opt.probes}}}};
}

std::string render_csv(const Json& report) {
    // flat summary: one row per trial from the "trials" array, columns from
    // the scalar fields of the first entry
    std::string out;
    if (!report.contains("trials") || report["trials"].empty()) return "trial\n";
    std::vector<std::string> cols;
    for (const auto& [k, v] : report["trials"][0].items())
        if (!v.is_structured()) cols.push_back(k);
    for (std::size_t i = 0; i < cols.size(); ++i) out += (i ? "," : "") + cols[i];
    out += "\n";
    for (const auto& row : report["trials"]) {
        for (std::size_t i = 0; i < cols.size(); ++i) {
            const auto& v = row[cols[i]];
            out += (i ? "," : "");
            out += v.is_string() ? v.get<std::string>() : v.dump();
        }
        out += "\n";
    }
    return out;
}

int emit(const Json& report, const Options& opt) {
    std::string text = opt.format == "csv" ? render_csv(report) : report.dump(2) + "\n";
    if (opt.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(opt.out, std::ios::binary);
        if (!f) throw ParseError("cannot open output file: " + opt.out);
        f << text;
    }
    return report.value("violated", std::string{}).empty() ? 0 : 1;
}

UltrametricSpace space_for_trial(const Options& opt, std::uint64_t trial) {
    auto rng = Rng::for_trial(opt.seed, trial);
    int n = std::max(2, opt.size);
    return UltrametricSpace::trusted(random_hierarchical_distances(rng, n));
}

std::vector<int> full_set(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    return v;
}

int run_seh_partition(const Options& opt) {
    Json report = base_report("seh-partition", opt);
    Json trials = Json::array();
    std::string violated;
    if (opt.config.contains("space")) {
        auto space = ultrametric_space_from_json(opt.config["space"]);
        Rational r = opt.config.contains("r") ? parse_fraction(opt.config["r"].get<std::string>())
                                              : rat(1, 2);
        auto A = opt.config.contains("A") ? opt.config["A"].get<std::vector<int>>()
                                          : full_set(space.size());
        auto B = opt.config.contains("B") ? opt.config["B"].get<std::vector<int>>()
                                          : full_set(space.size());
        auto cert = ultrametric_partition(space, A, B, r);
        trials.push_back(Json{{"trial", 0},
                              {"r", to_fraction(r)},
                              {"side", cert.claim.le ? "le" : "gt"},
                              {"fraction_a", to_fraction(cert.fractions[0])},
                              {"fraction_b", to_fraction(cert.fractions[1])},
                              {"certificate", json_of(cert)}});
    } else {
        for (int t = 0; t < opt.trials; ++t) {
            auto rng = Rng::for_trial(opt.seed, static_cast<std::uint64_t>(t));
            auto space = space_for_trial(opt, static_cast<std::uint64_t>(t));
            Rational r = rat(static_cast<long long>(rng.uniform(9)), 8);
            auto cert = ultrametric_partition(space, full_set(space.size()), full_set(space.size()), r);
            bool ok = cert.fractions[0] >= rat(1, 3) && cert.fractions[1] >= rat(1, 3);
            if (!ok && violated.empty()) violated = "partition fraction below 1/3";
            trials.push_back(Json{{"trial", t},
                                  {"points", space.size()},
                                  {"r", to_fraction(r)},
                                  {"side", cert.claim.le ? "le" : "gt"},
                                  {"fraction_a", to_fraction(cert.fractions[0])},
                                  {"fraction_b", to_fraction(cert.fractions[1])},
                                  {"ok", ok}});
        }
    }
    report["trials"] = std::move(trials);
    if (!violated.empty()) report["violated"] = violated;
    return emit(report, opt);
}

int run_seh_refine(const Options& opt) {
    Json report = base_report("seh-refine", opt);
    Rational eps = opt.config.contains("eps") ? parse_fraction(opt.config["eps"].get<std::string>())
                                              : rat(1, 4);
    report["params"]["eps"] = to_fraction(eps);
    Json trials = Json::array();
    std::string violated;
    long long rounds = 0;
    for (Rational w(1); w > eps; w /= 2) ++rounds;
    Rational bound(1);
    for (long long k = 0; k < rounds; ++k) bound /= 3;
    for (int t = 0; t < opt.trials; ++t) {
        auto space = space_for_trial(opt, static_cast<std::uint64_t>(t));
        auto table = distance_table(space);
        ThresholdCutter cutter = [&](const Rational& r, const std::vector<std::vector<int>>& sets) {
            return ultrametric_partition(space, sets[0], sets[1], r);
        };
        auto cert = refine_to_eps(cutter, rat(1, 3), table, eps,
                                  {full_set(space.size()), full_set(space.size())});
        bool ok = cert.fractions[0] >= bound && cert.fractions[1] >= bound && cert.verify(table);
        if (!ok && violated.empty()) violated = "refined certificate below the delta^rounds bound";
        trials.push_back(Json{{"trial", t},
                              {"points", space.size()},
                              {"fraction_a", to_fraction(cert.fractions[0])},
                              {"fraction_b", to_fraction(cert.fractions[1])},
                              {"bound", to_fraction(bound)},
                              {"ok", ok}});
    }
    report["trials"] = std::move(trials);
    if (!violated.empty()) report["violated"] = violated;
    return emit(report, opt);
}

int run_cell_build(const Options& opt) {
    Json report = base_report("cell-build", opt);
    Rational alpha = parse_fraction(opt.alpha);
    Json trials = Json::array();
    std::string violated;
    for (int t = 0; t < opt.trials; ++t) {
        auto rng = Rng::for_trial(opt.seed, static_cast<std::uint64_t>(t));
        auto anchor = random_monotone_map(rng, 4, 16);
        auto B = random_tuple(rng, std::max(2, opt.size), 4, 16);
        auto cert = build_cell(alpha, opt.grid_n, anchor, B);
        auto probes = critical_probes(anchor, B);
        for (int p = 0; p < opt.probes; ++p) probes.push_back(random_monotone_map(rng, 5, 24));
        auto rep = verify_cell(cert, anchor, B, probes);
        int violations = rep.homogeneous ? 0 : 1;
        if (!rep.pass() && violated.empty()) violated = "distal cell homogeneity or anchor positivity";
        Json entry{{"trial", t},
                   {"anchor_positive", rep.anchor_positive},
                   {"violations", violations},
                   {"probes", static_cast<int>(probes.size())}};
        if (t == 0) entry["certificate"] = json_of(cert);
        trials.push_back(std::move(entry));
    }
    report["trials"] = std::move(trials);
    if (!violated.empty()) report["violated"] = violated;
    return emit(report, opt);
}

int run_cell_verify(const Options& opt) {
    // explicit instance from config, or a seeded regeneration like cell-build
    Json report = base_report("cell-verify", opt);
    if (!opt.config.contains("certificate") || !opt.config.contains("anchor") ||
        !opt.config.contains("B"))
        throw ParseError("cell-verify needs config keys: certificate, anchor, B");
    auto cert = cell_certificate_from_json(opt.config["certificate"]);
    auto anchor = monotone_map_from_json(opt.config["anchor"]);
    std::vector<MonotoneMap> B;
    for (const auto& b : opt.config["B"]) B.push_back(monotone_map_from_json(b));
    std::vector<MonotoneMap> probes;
    if (opt.config.contains("probes"))
        for (const auto& x : opt.config["probes"]) probes.push_back(monotone_map_from_json(x));
    auto rng = Rng(opt.seed);
    for (int p = 0; p < opt.probes; ++p) probes.push_back(random_monotone_map(rng, 5, 24));
    auto rep = verify_cell(cert, anchor, B, probes);
    report["anchor_positive"] = rep.anchor_positive;
    report["homogeneous"] = rep.homogeneous;
    if (rep.violating_probe) report["violating_probe"] = *rep.violating_probe;
    if (rep.violating_b) report["violating_b"] = *rep.violating_b;
    if (!rep.pass()) report["violated"] = "distal cell contract";
    return emit(report, opt);
}

int run_type_distance(const Options& opt) {
    Json report = base_report("type-distance", opt);
    Json trials = Json::array();
    if (opt.config.contains("chain1") && opt.config.contains("chain2")) {
        auto c1 = chain_from_json(opt.config["chain1"]);
        auto c2 = chain_from_json(opt.config["chain2"]);
        trials.push_back(Json{{"trial", 0}, {"distance", to_fraction(hausdorff_distance(c1, c2))}});
    } else {
        int dim = std::max(1, opt.grid_n);
        for (int t = 0; t < opt.trials; ++t) {
            auto rng = Rng::for_trial(opt.seed, static_cast<std::uint64_t>(t));
            auto c1 = random_chain(rng, dim, 4, 12);
            auto c2 = random_chain(rng, dim, 4, 12);
            trials.push_back(
                Json{{"trial", t}, {"distance", to_fraction(hausdorff_distance(c1, c2))}});
        }
    }
    report["trials"] = std::move(trials);
    return emit(report, opt);
}

int run_coupling(const Options& opt) {
    Json report = base_report("coupling", opt);
    Json trials = Json::array();
    std::string violated;
    int dim = std::max(1, opt.grid_n);
    for (int t = 0; t < opt.trials; ++t) {
        auto rng = Rng::for_trial(opt.seed, static_cast<std::uint64_t>(t));
        auto c1 = random_chain(rng, dim, 4, 12);
        auto c2 = random_chain(rng, dim, 4, 12);
        auto cp = optimal_coupling(c1, c2);
        Rational att(0);
        for (std::size_t i = 0; i < cp.fs.size(); ++i)
            att = std::max(att, sup_distance(cp.fs[i], cp.gs[i]));
        bool ok = att == cp.distance && image_chain(cp.fs) == c1 && image_chain(cp.gs) == c2;
        if (!ok && violated.empty()) violated = "coupling does not attain the distance";
        trials.push_back(Json{{"trial", t}, {"distance", to_fraction(cp.distance)}, {"ok", ok}});
    }
    report["trials"] = std::move(trials);
    if (!violated.empty()) report["violated"] = violated;
    return emit(report, opt);
}

int run_indiscernible_build(const Options& opt) {
    Json report = base_report("indiscernible-build", opt);
    Chain p = opt.config.contains("chain")
                  ? chain_from_json(opt.config["chain"])
                  : Chain::from_vertices(
                        2, {{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(1), rat(1)}});
    int n = std::max(2, opt.size);
    auto seq = build_indiscernible(p, n);
    bool indiscernible = is_indiscernible(seq);
    report["chain"] = json_of(p);
    report["n"] = n;
    report["sequence"] = json_of(seq);
    report["indiscernible"] = indiscernible;
    if (n >= 5) {
        std::vector<std::vector<MonotoneMap>> five(seq.elements.begin(), seq.elements.begin() + 5);
        report["distal_check"] = base_change_check(five);
    }
    if (!indiscernible) report["violated"] = "constructed sequence is not indiscernible";
    return emit(report, opt);
}

int run_indiscernible_check(const Options& opt) {
    Json report = base_report("indiscernible-check", opt);
    if (opt.config.contains("sequence")) {
        auto seq = sequence_from_json(opt.config["sequence"]);
        report["indiscernible"] = is_indiscernible(seq);
        return emit(report, opt);
    }
    Json trials = Json::array();
    std::string violated;
    for (int t = 0; t < opt.trials; ++t) {
        auto rng = Rng::for_trial(opt.seed, static_cast<std::uint64_t>(t));
        auto p = random_staircase_chain(rng, 12);
        bool diag = diagonal_condition(p);
        auto seq = build_indiscernible(p, 4);
        bool ok = diag && is_indiscernible(seq);
        if (!ok && violated.empty()) violated = "staircase characterization";
        trials.push_back(Json{{"trial", t}, {"diagonal_condition", diag}, {"ok", ok}});
    }
    report["trials"] = std::move(trials);
    if (!violated.empty()) report["violated"] = violated;
    return emit(report, opt);
}

int run_axioms_check(const Options& opt) {
    Json report = base_report("axioms-check", opt);
    Json trials = Json::array();
    std::string violated;
    for (int t = 0; t < opt.trials; ++t) {
        auto rng = Rng::for_trial(opt.seed, static_cast<std::uint64_t>(t));
        auto f = random_monotone_map(rng, 4, 12);
        auto g = random_monotone_map(rng, 4, 12);
        auto f2 = random_monotone_map(rng, 4, 12);
        auto g2 = random_monotone_map(rng, 4, 12);
        Rational a = rat(static_cast<long long>(rng.uniform(13)), 12);
        Rational b = rat(static_cast<long long>(rng.uniform(13)), 12);
        if (a > b) std::swap(a, b);
        bool additive = phi_alpha(f, g, a) + phi_alpha(g, f, a) == a;
        bool monotone = phi_alpha(f, g, a) <= phi_alpha(f, g, b);
        bool lipschitz = abs(phi_alpha(f, g, a) - phi_alpha(f2, g2, a)) <=
                         std::max(sup_distance(f, f2), sup_distance(g, g2));
        bool ok = additive && monotone && lipschitz;
        if (!ok && violated.empty()) violated = "phi_alpha axiom schema";
        trials.push_back(Json{{"trial", t},
                              {"additive", additive},
                              {"monotone", monotone},
                              {"lipschitz", lipschitz},
                              {"ok", ok}});
    }
    report["trials"] = std::move(trials);
    if (!violated.empty()) report["violated"] = violated;
    return emit(report, opt);
}

int run_valuation(const Options& opt) {
    Json report = base_report("valuation", opt);
    // fixed examples over Q(sqrt 2)
    const std::vector<Integer> poly{Integer(-2), Integer(0), Integer(1)};
    auto pp = [&](const Rational& a, const Rational& b) {
        auto v = extension_valuation(poly, {a, b}, 2);
        return Json{{"base", to_fraction(v.base)}, {"exponent", to_fraction(v.exponent)}};
    };
    report["examples"] = Json{{"two", pp(rat(2), rat(0))},
                              {"sqrt_two", pp(rat(0), rat(1))},
                              {"one_plus_sqrt_two", pp(rat(1), rat(1))}};
    Json trials = Json::array();
    std::string violated;
    for (int t = 0; t < opt.trials; ++t) {
        auto rng = Rng::for_trial(opt.seed, static_cast<std::uint64_t>(t));
        auto coord = [&]() {
            long long num = static_cast<long long>(rng.uniform(17)) - 8;
            long long den = 1 + static_cast<long long>(rng.uniform(4));
            return rat(num, den);
        };
        Rational a = coord(), b = coord(), c = coord(), d = coord();
        if ((a == 0 && b == 0) || (c == 0 && d == 0)) {
            trials.push_back(Json{{"trial", t}, {"skipped", true}, {"ok", true}});
            continue;
        }
        auto vx = extension_valuation(poly, {a, b}, 2);
        auto vy = extension_valuation(poly, {c, d}, 2);
        auto vxy = extension_valuation(poly, {a * c + 2 * b * d, a * d + b * c}, 2);
        bool ok = vxy.exponent == vx.exponent + vy.exponent;
        if (!ok && violated.empty()) violated = "valuation multiplicativity";
        trials.push_back(Json{{"trial", t}, {"skipped", false}, {"ok", ok}});
    }
    report["trials"] = std::move(trials);
    if (!violated.empty()) report["violated"] = violated;
    return emit(report, opt);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact experiments over piecewise-linear types and ultrametric partitions"};
    app.require_subcommand(1);
    Options opt;
    std::vector<std::pair<std::string, int (*)(const Options&)>> commands{
        {"seh-partition", run_seh_partition},
        {"seh-refine", run_seh_refine},
        {"cell-build", run_cell_build},
        {"cell-verify", run_cell_verify},
        {"type-distance", run_type_distance},
        {"coupling", run_coupling},
        {"indiscernible-build", run_indiscernible_build},
        {"indiscernible-check", run_indiscernible_check},
        {"axioms-check", run_axioms_check},
        {"valuation", run_valuation}};
    for (auto& [name, fn] : commands) add_common_flags(app.add_subcommand(name), opt);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) ? 2 : 0;
    }
    try {
        apply_config(opt);
        for (auto& [name, fn] : commands)
            if (app.get_subcommand(name)->parsed()) return fn(opt);
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Json::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "verification failure: " << e.what() << "\n";
        return 1;
    }
}
