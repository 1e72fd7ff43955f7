#pragma once

// Named invariant suites: exhaustive sweeps over small configuration families plus seeded random
// samples. Each suite stops at its first violation and reports it as a witness; exhaustive
// sweeps visit smaller n first, random witnesses are shrunk greedily.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "oneconn/config.hpp"
#include "oneconn/connectivity.hpp"
#include "oneconn/generators.hpp"
#include "oneconn/intersection.hpp"
#include "oneconn/json_io.hpp"
#include "oneconn/lattice_box.hpp"
#include "oneconn/structure.hpp"

namespace oneconn {

// All configurations with n_min ≤ n ≤ n_max, self-intersections in [self_min, self_max],
// off-diagonal entries in [0, off_max], and component genera drawn from `genera`
// (k[i] = 2g - 2 - M[i][i]).
struct ExhaustiveFamily {
    std::size_t n_min = 1;
    std::size_t n_max = 3;
    Int self_min = -2;
    Int self_max = 0;
    Int off_max = 1;
    std::vector<Int> genera{0};
    bool snc_faithful = true;
};

// visit(const ConfigPtr&) may return false to stop. Returns the number of configurations visited.
template <class Visitor>
std::uint64_t for_each_configuration(const ExhaustiveFamily& fam, Visitor&& visit) {
    std::uint64_t visited = 0;
    for (std::size_t n = fam.n_min; n <= fam.n_max; ++n) {
        const std::size_t pairs = n * (n - 1) / 2;
        Multiplicity self_digits(n, 0), genus_digits(n, 0), off(pairs, 0);
        const Multiplicity self_bound(n, fam.self_max - fam.self_min);
        const Multiplicity genus_bound(n, static_cast<Int>(fam.genera.size()) - 1);
        const Multiplicity off_bound(pairs, fam.off_max);
        do {
            do {
                do {
                    RawConfiguration raw;
                    raw.name = "family" + std::to_string(n) + "_" + std::to_string(visited);
                    raw.snc_faithful = fam.snc_faithful;
                    raw.matrix.assign(n, std::vector<Int>(n, 0));
                    raw.k.assign(n, 0);
                    std::size_t p = 0;
                    for (std::size_t i = 0; i < n; ++i) {
                        raw.matrix[i][i] = fam.self_min + self_digits[i];
                        raw.k[i] = 2 * fam.genera[static_cast<std::size_t>(genus_digits[i])] - 2 - raw.matrix[i][i];
                        for (std::size_t j = i + 1; j < n; ++j, ++p)
                            raw.matrix[i][j] = raw.matrix[j][i] = off[p];
                    }
                    ++visited;
                    if constexpr (std::is_same_v<decltype(visit(std::declval<const ConfigPtr&>())), bool>) {
                        if (!visit(make_configuration(std::move(raw))))
                            return visited;
                    } else {
                        visit(make_configuration(std::move(raw)));
                    }
                } while (box_advance(off, off_bound));
            } while (box_advance(genus_digits, genus_bound));
        } while (box_advance(self_digits, self_bound));
    }
    return visited;
}

// visit(const Multiplicity&) for every divisor with full support and multiplicities in
// [1, mult_max], in counting order. Divisors with smaller support are divisors of the restricted
// configuration, which every family here contains at a smaller n.
template <class Visitor>
void for_each_full_support_divisor(std::size_t n, Int mult_max, Visitor&& visit) {
    Multiplicity digits(n, 0);
    const Multiplicity bound(n, mult_max - 1);
    Multiplicity d(n);
    do {
        for (std::size_t i = 0; i < n; ++i)
            d[i] = digits[i] + 1;
        if (!visit(std::as_const(d)))
            return;
    } while (box_advance(digits, bound));
}

struct SuiteOptions {
    std::uint64_t seed = 0;
    std::size_t count = 1000;
    EnumerationBudget budget{};
};

struct SuiteWitness {
    ConfigPtr config;
    std::vector<Multiplicity> divisors;
    std::string message;
};

struct SuiteResult {
    std::string suite;
    std::uint64_t exhaustive_instances = 0;
    std::uint64_t random_instances = 0;
    std::optional<SuiteWitness> witness;
    bool passed() const { return !witness.has_value(); }
};

inline json to_json_value(const SuiteResult& r) {
    json j{{"suite", r.suite},
           {"passed", r.passed()},
           {"exhaustive_instances", r.exhaustive_instances},
           {"random_instances", r.random_instances},
           {"witness", nullptr}};
    if (r.witness)
        j["witness"] = json{{"config", configuration_to_json(*r.witness->config)},
                            {"divisors", r.witness->divisors},
                            {"message", r.witness->message}};
    return j;
}

// Restriction of cfg to the given component indices.
inline ConfigPtr restrict_configuration(const SurfaceConfiguration& cfg, const std::vector<std::size_t>& keep) {
    RawConfiguration raw;
    raw.name = cfg.name();
    raw.snc_faithful = cfg.snc_faithful();
    raw.matrix.assign(keep.size(), std::vector<Int>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a) {
        raw.names.push_back(cfg.component_name(keep[a]));
        raw.k.push_back(cfg.k(keep[a]));
        for (std::size_t b = 0; b < keep.size(); ++b)
            raw.matrix[a][b] = cfg(keep[a], keep[b]);
    }
    return make_configuration(std::move(raw));
}

// Greedy shrinking: lower multiplicities one step at a time while `fails` keeps holding, then drop
// components outside every support.
inline SuiteWitness shrink_witness(SuiteWitness w,
                                   const std::function<bool(const SurfaceConfiguration&,
                                                            const std::vector<Multiplicity>&)>& fails) {
    bool progress = true;
    while (progress) {
        progress = false;
        for (auto& d : w.divisors)
            for (auto& v : d) {
                if (v == 0)
                    continue;
                --v;
                if (!is_zero(d) && fails(*w.config, w.divisors)) {
                    progress = true;
                } else {
                    ++v;
                }
            }
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < w.config->size(); ++i) {
        bool used = false;
        for (const auto& d : w.divisors)
            used = used || d[i] > 0;
        if (used)
            keep.push_back(i);
    }
    if (keep.size() == w.config->size())
        return w;
    auto smaller = restrict_configuration(*w.config, keep);
    std::vector<Multiplicity> divisors;
    for (const auto& d : w.divisors) {
        Multiplicity r;
        for (auto i : keep)
            r.push_back(d[i]);
        divisors.push_back(std::move(r));
    }
    if (!fails(*smaller, divisors))
        return w;
    w.config = smaller;
    w.divisors = std::move(divisors);
    return w;
}

namespace families {

// p_a additivity, exhaustive part.
inline ExhaustiveFamily additivity() { return {1, 3, -2, 1, 2, {0, 1}, false}; }
// Rational components, |self| ≤ 3, off-diagonals ≤ 2, n ≤ 4.
inline ExhaustiveFamily genus_zero_small() { return {1, 4, -3, 3, 2, {0}, false}; }
// snc_faithful, n ≤ 5. For reduced divisors both A·(D-A) and the support graph ignore the diagonal,
// so two self-intersection values suffice.
inline ExhaustiveFamily reduced_snc() { return {1, 5, -2, -1, 2, {0}, true}; }
// Genus 0 or 1 components, for h¹ ≥ 0 of reduced curves.
inline ExhaustiveFamily reduced_mixed_genus() { return {1, 4, -2, 0, 2, {0, 1}, true}; }

} // namespace families

inline SuiteResult run_additivity_suite(const SuiteOptions& opt) {
    SuiteResult res;
    res.suite = "additivity";
    auto fails = [](const SurfaceConfiguration& cfg, const std::vector<Multiplicity>& ds) {
        return !additivity_check(cfg, ds[0], ds[1]).equal;
    };

    SamplerSpec spec;
    spec.n_max = 4;
    spec.mult_max = 3;
    spec.self_min = -4;
    spec.self_max = 2;
    spec.k_policy = GenusPolicy::rational_or_elliptic;
    spec.edge_max = 3;
    spec.seed = opt.seed;
    Sampler sampler(spec);
    std::mt19937_64 rng(opt.seed ^ 0x9e3779b97f4a7c15ull);
    std::uniform_int_distribution<Int> pick(0, 3);
    for (std::size_t s = 0; s < opt.count; ++s) {
        Instance inst = sampler.next();
        Multiplicity d2(inst.config->size());
        for (auto& v : d2)
            v = pick(rng);
        if (is_zero(d2))
            d2[0] = 1;
        std::vector<Multiplicity> ds{inst.divisor.mult(), d2};
        ++res.random_instances;
        if (fails(*inst.config, ds)) {
            res.witness = shrink_witness({inst.config, ds, "p_a(d1+d2) != p_a(d1)+p_a(d2)-1+d1.d2"}, fails);
            return res;
        }
    }

    // Exhaustive part: p_a of each box point is evaluated once per configuration; p_a(d1 + d2) and
    // d1·d2 are evaluated per pair.
    for_each_configuration(families::additivity(), [&](const ConfigPtr& cfg) {
        const std::size_t n = cfg->size();
        const Multiplicity bound(n, 2);
        std::vector<Int> pa(box_size(bound));
        Multiplicity p(n, 0);
        do
            pa[box_index(p, bound)] = genus_of(*cfg, p);
        while (box_advance(p, bound));

        Multiplicity d1(n, 0), sum(n);
        while (box_advance(d1, bound)) {
            const Int pa1 = pa[box_index(d1, bound)];
            Multiplicity d2(n, 0);
            while (box_advance(d2, bound)) {
                ++res.exhaustive_instances;
                for (std::size_t i = 0; i < n; ++i)
                    sum[i] = d1[i] + d2[i];
                AdditivityCheck c;
                c.lhs = genus_of(*cfg, sum);
                c.rhs = pa1 + pa[box_index(d2, bound)] - 1 + intersect(*cfg, d1, d2);
                c.equal = c.lhs == c.rhs;
                if (!c.equal) {
                    res.witness = SuiteWitness{cfg, {d1, d2},
                                               "p_a(d1+d2) = " + std::to_string(c.lhs) + " but formula gives " +
                                                   std::to_string(c.rhs)};
                    return false;
                }
            }
        }
        return true;
    });
    return res;
}

inline SuiteResult run_prop_go_suite(const SuiteOptions& opt) {
    SuiteResult res;
    res.suite = "prop_go";
    for_each_configuration(families::genus_zero_small(), [&](const ConfigPtr& cfg) {
        bool keep_going = true;
        for_each_full_support_divisor(cfg->size(), 2, [&](const Multiplicity& d) {
            if (first_positive_genus_subcurve(*cfg, d, opt.budget))
                return true;
            ++res.exhaustive_instances;
            const auto c = prop_go_check(*cfg, d, opt.budget);
            if (c.status == CheckStatus::fail) {
                res.witness = SuiteWitness{cfg, {d}, c.detail};
                keep_going = false;
            }
            return keep_going;
        });
        return keep_going;
    });
    return res;
}

inline SuiteResult run_lemma_b_suite(const SuiteOptions& opt) {
    SuiteResult res;
    res.suite = "lemma_b";
    for_each_configuration(families::reduced_snc(), [&](const ConfigPtr& cfg) {
        const Multiplicity d(cfg->size(), 1);
        if (!is_m_connected(*cfg, d, 1, opt.budget))
            return true;
        ++res.exhaustive_instances;
        const auto c = lemma_b_shadow_check(*cfg, d, opt.budget);
        if (c.status == CheckStatus::fail) {
            res.witness = SuiteWitness{cfg, {d, *c.witness}, c.detail};
            return false;
        }
        return true;
    });
    return res;
}

inline SuiteResult run_split_conn_suite(const SuiteOptions& opt) {
    SuiteResult res;
    res.suite = "split_conn";
    auto check = [&](const ConfigPtr& cfg, const Multiplicity& d) {
        const auto conn = connectedness_number(*cfg, d, opt.budget);
        if (conn.conn.is_infinite() || conn.conn.value() < 1)
            return true;
        ++res.exhaustive_instances;
        const auto c = split_connectivity_check(*cfg, d, conn.conn.value(), opt.budget);
        if (c.status == CheckStatus::fail) {
            res.witness = SuiteWitness{cfg, {d, *c.witness}, c.detail};
            return false;
        }
        return true;
    };
    bool ok = true;
    for_each_configuration(families::reduced_snc(),
                           [&](const ConfigPtr& cfg) { return ok = check(cfg, Multiplicity(cfg->size(), 1)); });
    if (!ok)
        return res;
    auto non_reduced = families::genus_zero_small();
    non_reduced.n_max = 3;
    for_each_configuration(non_reduced, [&](const ConfigPtr& cfg) {
        for_each_full_support_divisor(cfg->size(), 2, [&](const Multiplicity& d) { return ok = check(cfg, d); });
        return ok;
    });
    return res;
}

inline SuiteResult run_h1_nonneg_suite(const SuiteOptions& opt) {
    SuiteResult res;
    res.suite = "h1_nonneg";
    auto fails = [](const SurfaceConfiguration& cfg, const std::vector<Multiplicity>& ds) {
        return reduced_h1(cfg, ds[0]) < 0;
    };
    for_each_configuration(families::reduced_mixed_genus(), [&](const ConfigPtr& cfg) {
        const Multiplicity d(cfg->size(), 1);
        ++res.exhaustive_instances;
        if (fails(*cfg, {d})) {
            res.witness = SuiteWitness{cfg, {d}, "h1 = " + std::to_string(reduced_h1(*cfg, d)) + " < 0"};
            return false;
        }
        return true;
    });
    if (res.witness)
        return res;

    SamplerSpec spec;
    spec.n_max = 7;
    spec.mult_max = 1;
    spec.self_min = -4;
    spec.self_max = 2;
    spec.k_policy = GenusPolicy::rational_or_elliptic;
    spec.edge_max = 3;
    spec.seed = opt.seed;
    Sampler sampler(spec);
    for (std::size_t s = 0; s < opt.count; ++s) {
        Instance inst = sampler.next();
        ++res.random_instances;
        std::vector<Multiplicity> ds{inst.divisor.mult()};
        if (fails(*inst.config, ds)) {
            res.witness = shrink_witness({inst.config, ds, "reduced h1 < 0"}, fails);
            return res;
        }
    }
    return res;
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"additivity", "prop_go", "lemma_b", "split_conn", "h1_nonneg"};
    return names;
}

inline SuiteResult run_suite(std::string_view name, const SuiteOptions& opt) {
    if (name == "additivity") return run_additivity_suite(opt);
    if (name == "prop_go") return run_prop_go_suite(opt);
    if (name == "lemma_b") return run_lemma_b_suite(opt);
    if (name == "split_conn") return run_split_conn_suite(opt);
    if (name == "h1_nonneg") return run_h1_nonneg_suite(opt);
    throw InputError("unknown suite '" + std::string(name) + "'");
}

} // namespace oneconn
