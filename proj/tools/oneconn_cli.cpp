// oneconn: command-line front end.
//
// Exit codes: 0 success, 1 check or suite failure, 2 input error, 3 enumeration budget exceeded.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oneconn/oneconn.hpp"

namespace {

using namespace oneconn;

enum ExitCode { exit_ok = 0, exit_check_failed = 1, exit_input = 2, exit_budget = 3 };

struct Common {
    std::string config;
    std::string divisor;
    std::string divisor_file;
    std::string format = "table";
    std::uint64_t max_candidates = EnumerationBudget{}.max_candidates;
    bool timing = false;
};

void add_common(CLI::App* sub, Common& c, bool with_config = true) {
    if (with_config) {
        sub->add_option("-c,--config", c.config, "configuration JSON file")->required();
        sub->add_option("-d,--divisor", c.divisor, "divisor as comma-separated multiplicities");
        sub->add_option("--divisor-file", c.divisor_file, "divisor as JSON {\"mult\": [...]}");
    }
    sub->add_option("--format", c.format, "output format")->check(CLI::IsMember({"table", "json"}));
    sub->add_option("--max-candidates", c.max_candidates, "enumeration budget")->check(CLI::PositiveNumber);
    sub->add_flag("--timing", c.timing, "record wall time in the JSON manifest");
}

class Runner {
public:
    Runner(const CLI::App& sub, const Common& common)
        : common_(common), start_(std::chrono::steady_clock::now()) {
        manifest_.command = sub.get_name();
        manifest_.max_candidates = common.max_candidates;
        for (const CLI::Option* opt : sub.get_options()) {
            if (opt->count() == 0 || opt->get_name() == "--help")
                continue;
            std::string key = opt->get_lnames().empty() ? opt->get_name() : opt->get_lnames().front();
            std::string value;
            for (const auto& r : opt->results())
                value += (value.empty() ? "" : ",") + r;
            manifest_.flags[key] = value.empty() ? "true" : value;
        }
        if (!common.config.empty())
            manifest_.inputs.push_back(common.config);
        if (!common.divisor_file.empty())
            manifest_.inputs.push_back(common.divisor_file);
    }

    bool json_mode() const { return common_.format == "json"; }
    EnumerationBudget budget() const { return {common_.max_candidates}; }
    void set_seed(std::uint64_t seed) { manifest_.seed = seed; }

    const LoadedConfiguration& loaded() {
        if (!loaded_)
            loaded_ = load_configuration_file(common_.config);
        return *loaded_;
    }

    // Inline wins over --divisor-file; an embedded "divisor" in the configuration is the fallback.
    Divisor divisor() {
        const auto& cfg = loaded().config;
        std::optional<Multiplicity> from_file;
        if (!common_.divisor_file.empty())
            from_file = parse_divisor_json(parse_json_text(read_text_file(common_.divisor_file), common_.divisor_file));
        if (!common_.divisor.empty()) {
            auto m = parse_divisor_csv(common_.divisor, cfg->size());
            if (from_file && *from_file != m)
                std::cerr << "warning: inline divisor " << format_mult(m) << " overrides --divisor-file "
                          << format_mult(*from_file) << "\n";
            return Divisor(cfg, std::move(m));
        }
        if (from_file)
            return Divisor(cfg, *from_file);
        if (loaded().divisor)
            return Divisor(cfg, *loaded().divisor);
        throw InputError("no divisor given (use -d/--divisor or --divisor-file)");
    }

    Divisor inline_divisor(const std::string& csv, const char* what) {
        if (csv.empty())
            throw InputError(std::string("missing ") + what);
        return Divisor(loaded().config, parse_divisor_csv(csv, loaded().config->size()));
    }

    void emit(const json& result, const std::string& text) {
        if (json_mode()) {
            if (common_.timing)
                manifest_.wall_time_ms =
                    std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
            std::cout << json{{"manifest", manifest_}, {"result", result}}.dump(2) << "\n";
        } else {
            std::cout << text;
        }
    }

    const RunManifest& manifest() const { return manifest_; }

private:
    const Common& common_;
    std::chrono::steady_clock::time_point start_;
    RunManifest manifest_;
    std::optional<LoadedConfiguration> loaded_;
};

std::string decomposition_str(const Decomposition& d) { return format_mult(d.a) + " + " + format_mult(d.b); }

int run_analyze(Runner& r) {
    const Divisor d = r.divisor();
    const auto genus = arithmetic_genus(d);
    const auto conn = connectedness_number(d, r.budget());
    std::string text = format_table({{"quantity", "value"},
                                     {"divisor", format_mult(d.mult())},
                                     {"D^2", std::to_string(genus.self_int)},
                                     {"K.D", std::to_string(genus.k_degree)},
                                     {"p_a", std::to_string(genus.pa)},
                                     {"conn", conn.conn.to_string()},
                                     {"argmin", conn.argmin ? decomposition_str(*conn.argmin) : "none"},
                                     {"candidates", std::to_string(conn.candidates_examined)}});
    r.emit(json{{"genus", genus}, {"connectivity", conn}}, text);
    return exit_ok;
}

int run_connect(Runner& r, std::optional<Int> m, bool split) {
    const Divisor d = r.divisor();
    const auto conn = connectedness_number(d, r.budget());
    json result{{"connectivity", conn}};
    std::vector<std::vector<std::string>> rows{{"quantity", "value"},
                                               {"divisor", format_mult(d.mult())},
                                               {"conn", conn.conn.to_string()},
                                               {"argmin", conn.argmin ? decomposition_str(*conn.argmin) : "none"}};
    int code = exit_ok;
    std::string extra;
    if (m) {
        const bool ok = conn.conn.at_least(*m);
        result["m"] = *m;
        result["m_connected"] = ok;
        rows.push_back({std::to_string(*m) + "-connected", ok ? "yes" : "no"});
        if (split) {
            const auto c = split_connectivity_check(d, *m, r.budget());
            result["split_check"] = c;
            extra = "\n" + format_checks({c});
            if (c.status == CheckStatus::fail)
                code = exit_check_failed;
        }
    } else if (split) {
        throw InputError("--split requires -m");
    }
    r.emit(result, format_table(rows) + extra);
    return code;
}

int run_subcurves(Runner& r, bool list) {
    const Divisor z = r.divisor();
    const auto budget = r.budget();
    const auto count = subcurve_count(z.mult(), budget);
    const auto spectrum = genus_spectrum(z, budget);
    const auto go = prop_go_check(z, budget);
    json result{{"count", count}, {"spectrum", spectrum}, {"prop_go", go}};
    std::vector<std::vector<std::string>> rows{{"quantity", "value"},
                                               {"divisor", format_mult(z.mult())},
                                               {"subcurves", std::to_string(count)},
                                               {"max p_a", std::to_string(spectrum.max_pa)},
                                               {"max p_a witness", format_mult(spectrum.witness)},
                                               {"all p_a <= 0", spectrum.all_nonpositive ? "yes" : "no"}};
    if (z.config().snc_faithful() && is_reduced(z.mult())) {
        const Int h0 = reduced_h0(z), h1 = reduced_h1(z);
        result["reduced_h0"] = h0;
        result["reduced_h1"] = h1;
        rows.push_back({"h0 (reduced)", std::to_string(h0)});
        rows.push_back({"h1 (reduced)", std::to_string(h1)});
    }
    std::string text = format_table(rows) + "\n" + format_checks({go});
    if (list) {
        json items = json::array();
        std::vector<std::vector<std::string>> lrows{{"subcurve", "p_a"}};
        for (const auto& s : enumerate_subcurves(z, budget)) {
            const Int pa = genus_of(z.config(), s);
            items.push_back({{"mult", s}, {"pa", pa}});
            lrows.push_back({format_mult(s), std::to_string(pa)});
        }
        result["subcurves"] = items;
        text += "\n" + format_table(lrows);
    }
    r.emit(result, text);
    return exit_ok;
}

int run_decompose(Runner& r, const std::string& a_csv, bool witness, bool lemma_b) {
    const Divisor d = r.divisor();
    const auto budget = r.budget();
    json result = json::object();
    std::string text;
    int code = exit_ok;
    if (!a_csv.empty()) {
        const Divisor a = r.inline_divisor(a_csv, "-a");
        const auto chain = chain_decomposition_search(d, a, budget);
        result["chain"] = chain ? json(*chain) : json(nullptr);
        text += "chain decomposition of A = " + format_mult(a.mult()) + ":";
        if (chain)
            for (const auto& p : chain->pieces)
                text += " " + format_mult(p);
        else
            text += " none";
        text += "\n";
    }
    if (witness) {
        const auto w = lemma_dec_reduced_witness(d);
        result["reduced_witness"] = w;
        text += "component split: " + decomposition_str(w) + ", pairing " +
                std::to_string(intersect(d.config(), w.a, w.b)) + "\n";
    }
    if (lemma_b) {
        const auto c = lemma_b_shadow_check(d, budget);
        result["h0_bound_check"] = c;
        text += format_checks({c});
        if (c.status == CheckStatus::fail)
            code = exit_check_failed;
    }
    if (a_csv.empty() && !witness && !lemma_b) {
        json items = json::array();
        std::vector<std::vector<std::string>> rows{{"A", "D-A", "A.(D-A)"}};
        for (const auto& dec : enumerate_decompositions(d, budget)) {
            const Int v = intersect(d.config(), dec.a, dec.b);
            items.push_back({{"a", dec.a}, {"b", dec.b}, {"pairing", v}});
            rows.push_back({format_mult(dec.a), format_mult(dec.b), std::to_string(v)});
        }
        result["decompositions"] = items;
        text += format_table(rows);
    }
    r.emit(result, text);
    return code;
}

int run_fixedpart(Runner& r, const std::string& z_csv) {
    const Divisor d = r.divisor();
    const Divisor z = r.inline_divisor(z_csv, "-z/--fixed");
    const auto report = fixed_part_report(d, z, r.budget());
    r.emit(json(report), format_report(report));
    return report.consistent() ? exit_ok : exit_check_failed;
}

struct GenFlags {
    std::string family;
    std::size_t length = 3;
    Int self = -2;
    Int k = 0;
    std::size_t leaves = 2;
    Int multiple = 1;
};

json instance_json(const Instance& inst, const Divisor& d) {
    json doc = configuration_to_json(*inst.config);
    doc["divisor"] = json{{"mult", d.mult()}};
    return doc;
}

int run_gen(Runner& r, const GenFlags& g) {
    Instance inst = g.family == "chain" ? gen_chain(g.length, g.self, g.k)
                  : g.family == "cycle" ? gen_cycle(g.length)
                                        : gen_star(g.leaves);
    Divisor d = g.multiple == 1 ? inst.divisor : gen_multiple_fiber(inst.divisor, g.multiple);
    json doc = instance_json(inst, d);
    doc["manifest"] = r.manifest();
    std::cout << doc.dump(2) << "\n";
    return exit_ok;
}

struct SampleFlags {
    std::optional<std::uint64_t> seed;
    std::size_t count = 10;
    std::size_t n_max = 4;
    Int mult_max = 2;
    Int self_min = -3;
    Int self_max = 1;
    std::string genus = "rational";
    double edge_density = 0.5;
    Int edge_max = 1;
    std::string filter = "none";
};

int run_sample(Runner& r, const SampleFlags& f) {
    if (r.json_mode() && !f.seed)
        throw InputError("--seed is required with --format json");
    SamplerSpec spec;
    spec.seed = f.seed.value_or(0);
    spec.n_max = f.n_max;
    spec.mult_max = f.mult_max;
    spec.self_min = f.self_min;
    spec.self_max = f.self_max;
    spec.k_policy = f.genus == "mixed" ? GenusPolicy::rational_or_elliptic : GenusPolicy::rational;
    spec.edge_density = f.edge_density;
    spec.edge_max = f.edge_max;
    spec.filter = parse_sample_filter(f.filter);
    spec.filter_budget = r.budget();
    r.set_seed(spec.seed);
    Sampler sampler(spec);
    json items = json::array();
    std::vector<std::vector<std::string>> rows{{"#", "n", "divisor", "p_a", "conn"}};
    for (std::size_t i = 0; i < f.count; ++i) {
        const Instance inst = sampler.next();
        items.push_back(instance_json(inst, inst.divisor));
        rows.push_back({std::to_string(i), std::to_string(inst.config->size()), format_mult(inst.divisor.mult()),
                        std::to_string(genus_of(*inst.config, inst.divisor.mult())),
                        connectedness_number(inst.divisor, r.budget()).conn.to_string()});
    }
    r.emit(json{{"instances", items}}, "seed " + std::to_string(spec.seed) + "\n" + format_table(rows));
    return exit_ok;
}

int run_check(Runner& r, const std::string& suite, std::optional<std::uint64_t> seed, std::size_t count) {
    if (r.json_mode() && !seed)
        throw InputError("--seed is required with --format json");
    SuiteOptions opt;
    opt.seed = seed.value_or(0);
    opt.count = count;
    opt.budget = r.budget();
    r.set_seed(opt.seed);
    const auto res = run_suite(suite, opt);
    std::string text = format_table({{"suite", "exhaustive", "random", "result"},
                                     {res.suite, std::to_string(res.exhaustive_instances),
                                      std::to_string(res.random_instances), res.passed() ? "pass" : "FAIL"}});
    if (res.witness) {
        text += "witness: " + res.witness->message + "\n";
        text += "  divisors:";
        for (const auto& d : res.witness->divisors)
            text += " " + format_mult(d);
        text += "\n  configuration: " + configuration_to_json(*res.witness->config).dump() + "\n";
    }
    r.emit(to_json_value(res), text);
    return res.passed() ? exit_ok : exit_check_failed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Numerical certification toolkit for 1-connected curves and fixed parts of |omega_D|"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(tool_version));

    Common c_analyze, c_connect, c_subcurves, c_decompose, c_fixedpart, c_gen, c_sample, c_check;

    auto* analyze = app.add_subcommand("analyze", "genus, self-intersection and connectedness of a divisor");
    add_common(analyze, c_analyze);

    auto* connect = app.add_subcommand("connect", "connectedness number and m-connectedness");
    add_common(connect, c_connect);
    std::optional<Int> m;
    bool split = false;
    connect->add_option("-m", m, "test m-connectedness");
    connect->add_flag("--split", split, "verify connectivity of splits attaining m");

    auto* subcurves = app.add_subcommand("subcurves", "subcurve genus spectrum and reduced h0/h1");
    add_common(subcurves, c_subcurves);
    bool list = false;
    subcurves->add_flag("--list", list, "list every subcurve with its genus");

    auto* decompose = app.add_subcommand("decompose", "decompositions, chain search, component witness");
    add_common(decompose, c_decompose);
    std::string a_csv;
    bool witness = false, lemma_b = false;
    decompose->add_option("-a", a_csv, "search a chain decomposition of this subdivisor");
    decompose->add_flag("--witness", witness, "split a disconnected reduced divisor by components");
    decompose->add_flag("--h0-bound", lemma_b, "check h0(A) <= A.(D-A) over reduced A < D");

    auto* fixedpart = app.add_subcommand("fixedpart", "consistency report for Z in the fixed part of |omega_D|");
    add_common(fixedpart, c_fixedpart);
    std::string z_csv;
    fixedpart->add_option("-z,--fixed", z_csv, "asserted fixed curve Z")->required();

    auto* gen = app.add_subcommand("gen", "emit a named fixture as a configuration document");
    add_common(gen, c_gen, false);
    GenFlags g;
    gen->add_option("family", g.family, "chain | cycle | star")->required()->check(
        CLI::IsMember({"chain", "cycle", "star"}));
    gen->add_option("--length", g.length, "number of components (chain, cycle)");
    gen->add_option("--self", g.self, "self-intersection (chain)");
    gen->add_option("--k", g.k, "K-degree (chain)");
    gen->add_option("--leaves", g.leaves, "leaf count (star)");
    gen->add_option("--multiple", g.multiple, "scale the divisor (multiple fibre)");

    auto* sample = app.add_subcommand("sample", "seeded random configurations");
    add_common(sample, c_sample, false);
    SampleFlags sf;
    sample->add_option("--seed", sf.seed, "random seed");
    sample->add_option("--count", sf.count, "number of instances");
    sample->add_option("--n-max", sf.n_max, "maximum component count");
    sample->add_option("--mult-max", sf.mult_max, "maximum multiplicity");
    sample->add_option("--self-min", sf.self_min, "minimum self-intersection");
    sample->add_option("--self-max", sf.self_max, "maximum self-intersection");
    sample->add_option("--genus", sf.genus, "component genera")->check(CLI::IsMember({"rational", "mixed"}));
    sample->add_option("--edge-density", sf.edge_density, "probability of a positive intersection");
    sample->add_option("--edge-max", sf.edge_max, "maximum intersection of distinct components");
    sample->add_option("--filter", sf.filter, "none | one_connected | all_subcurve_pa_nonpositive");

    auto* check = app.add_subcommand("check", "run a named invariant suite");
    add_common(check, c_check, false);
    std::string suite;
    std::optional<std::uint64_t> check_seed;
    std::size_t count = 1000;
    check->add_option("suite", suite, "additivity | prop_go | lemma_b | split_conn | h1_nonneg")->required();
    check->add_option("--seed", check_seed, "random seed");
    check->add_option("--count", count, "random samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : exit_input;
    }

    try {
        if (analyze->parsed()) {
            Runner r(*analyze, c_analyze);
            return run_analyze(r);
        }
        if (connect->parsed()) {
            Runner r(*connect, c_connect);
            return run_connect(r, m, split);
        }
        if (subcurves->parsed()) {
            Runner r(*subcurves, c_subcurves);
            return run_subcurves(r, list);
        }
        if (decompose->parsed()) {
            Runner r(*decompose, c_decompose);
            return run_decompose(r, a_csv, witness, lemma_b);
        }
        if (fixedpart->parsed()) {
            Runner r(*fixedpart, c_fixedpart);
            return run_fixedpart(r, z_csv);
        }
        if (gen->parsed()) {
            Runner r(*gen, c_gen);
            return run_gen(r, g);
        }
        if (sample->parsed()) {
            Runner r(*sample, c_sample);
            return run_sample(r, sf);
        }
        if (check->parsed()) {
            Runner r(*check, c_check);
            return run_check(r, suite, check_seed, count);
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_budget;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const ArithmeticOverflow& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const json::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    }
    return exit_input;
}
