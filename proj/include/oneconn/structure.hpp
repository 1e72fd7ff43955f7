#pragma once

// Subcurves, the reduced-curve cohomology shadow, and the numerical consequences of a curve Z
// lying in the fixed part of |ω_D| for a 1-connected D.
//
// Reduced shadow: on a reduced curve whose matrix counts transverse intersections of smooth
// components, regular functions are constant on connected components, so h⁰(O) is the number of
// connected components of the support graph and h¹(O) = h⁰ - 1 + p_a.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "oneconn/check.hpp"
#include "oneconn/config.hpp"
#include "oneconn/connectivity.hpp"
#include "oneconn/errors.hpp"
#include "oneconn/intersection.hpp"
#include "oneconn/lattice_box.hpp"

namespace oneconn {

// Π(z_i + 1) - 1; throws BudgetExceeded above max_candidates.
inline std::uint64_t subcurve_count(std::span<const Int> z, const EnumerationBudget& budget) {
    validate_budget(budget);
    const std::uint64_t box = box_size(z);
    if (box == saturated)
        throw BudgetExceeded(saturated, budget.max_candidates);
    if (box - 1 > budget.max_candidates)
        throw BudgetExceeded(box - 1, budget.max_candidates);
    return box - 1;
}

// visit(const Multiplicity&) for every 0 ≺ z' ≼ z in counting order; may return bool to stop.
template <class Visitor>
void for_each_subcurve(std::span<const Int> z, const EnumerationBudget& budget, Visitor&& visit) {
    const std::uint64_t count = subcurve_count(z, budget);
    Multiplicity cur(z.size(), 0);
    for (std::uint64_t i = 0; i < count; ++i) {
        box_advance(cur, z);
        if constexpr (std::is_same_v<decltype(visit(std::as_const(cur))), bool>) {
            if (!visit(std::as_const(cur)))
                return;
        } else {
            visit(std::as_const(cur));
        }
    }
}

inline std::vector<Multiplicity> enumerate_subcurves(const Divisor& z, const EnumerationBudget& budget = {}) {
    std::vector<Multiplicity> out;
    for_each_subcurve(z.mult(), budget, [&](const Multiplicity& s) { out.push_back(s); });
    return out;
}

struct GenusSpectrum {
    Int max_pa = 0;
    Multiplicity witness; // first maximiser in counting order
    bool all_nonpositive = true;
    friend bool operator==(const GenusSpectrum&, const GenusSpectrum&) = default;
};

namespace detail {

// Walks all subcurves of z with incremental genus evaluation. visit(point, pa) returns false to
// stop early.
template <class Visitor>
void walk_subcurve_genera(const SurfaceConfiguration& cfg, std::span<const Int> z,
                          const EnumerationBudget& budget, Visitor&& visit) {
    const std::uint64_t count = subcurve_count(z, budget);
    require_headroom(cfg, z);
    QuadraticWalk walk(cfg, z, Multiplicity(cfg.k().begin(), cfg.k().end()), Multiplicity(z.size(), 0));
    for (std::uint64_t i = 0; i < count; ++i) {
        walk.advance();
        const Int pa = 1 + (walk.quadratic() + walk.linear()) / 2;
        if (!visit(walk.point(), pa))
            return;
    }
}

} // namespace detail

inline GenusSpectrum genus_spectrum(const SurfaceConfiguration& cfg, std::span<const Int> z,
                                    const EnumerationBudget& budget = {}) {
    GenusSpectrum s;
    bool first = true;
    detail::walk_subcurve_genera(cfg, z, budget, [&](const Multiplicity& p, Int pa) {
        if (first || pa > s.max_pa) {
            s.max_pa = pa;
            s.witness = p;
            first = false;
        }
        return true;
    });
    s.all_nonpositive = s.max_pa <= 0;
    return s;
}

inline GenusSpectrum genus_spectrum(const Divisor& z, const EnumerationBudget& budget = {}) {
    return genus_spectrum(z.config(), z.mult(), budget);
}

// First subcurve (counting order) with p_a > 0, if any. Cheaper than genus_spectrum when the
// hypothesis "all subcurves have p_a ≤ 0" usually fails.
inline std::optional<Multiplicity> first_positive_genus_subcurve(const SurfaceConfiguration& cfg,
                                                                 std::span<const Int> z,
                                                                 const EnumerationBudget& budget = {}) {
    std::optional<Multiplicity> hit;
    detail::walk_subcurve_genera(cfg, z, budget, [&](const Multiplicity& p, Int pa) {
        if (pa > 0) {
            hit = p;
            return false;
        }
        return true;
    });
    return hit;
}

// Under "p_a(Z') ≤ 0 for every 0 ≺ Z' ≼ Z": p_a(Z) = 0 exactly when Z is 1-connected.
inline CheckResult prop_go_check(const SurfaceConfiguration& cfg, std::span<const Int> z,
                                 const EnumerationBudget& budget = {}) {
    CheckResult r{"genus_zero_iff_one_connected", CheckStatus::pass, {}, std::nullopt};
    const auto spectrum = genus_spectrum(cfg, z, budget);
    if (!spectrum.all_nonpositive) {
        r.status = CheckStatus::not_applicable;
        r.detail = "hypothesis not satisfied: subcurve " + format_mult(spectrum.witness) + " has p_a = " +
                   std::to_string(spectrum.max_pa) + " > 0";
        r.witness = spectrum.witness;
        return r;
    }
    const Int pa = genus_of(cfg, z);
    const auto conn = connectedness_number(cfg, z, budget);
    const bool genus_zero = pa == 0;
    const bool one_connected = conn.conn.at_least(1);
    r.detail = "p_a = " + std::to_string(pa) + ", connectedness number " + conn.conn.to_string();
    if (genus_zero != one_connected) {
        r.status = CheckStatus::fail;
        r.witness = genus_zero ? conn.argmin->a : Multiplicity(z.begin(), z.end());
    }
    return r;
}

inline CheckResult prop_go_check(const Divisor& z, const EnumerationBudget& budget = {}) {
    return prop_go_check(z.config(), z.mult(), budget);
}

namespace detail {

inline void require_reduced_shadow(const SurfaceConfiguration& cfg, std::span<const Int> z) {
    if (!cfg.snc_faithful())
        throw PreconditionError("reduced-curve shadow requires an snc_faithful configuration");
    if (!is_reduced(z))
        throw PreconditionError("reduced-curve shadow requires a reduced divisor, got " + format_mult(z));
    if (is_zero(z))
        throw PreconditionError("reduced-curve shadow requires a non-zero divisor");
}

// Component label per support index (smallest member index labels each component); -1 off support.
inline std::vector<long> support_components(const SurfaceConfiguration& cfg, std::span<const Int> z) {
    const std::size_t n = cfg.size();
    std::vector<long> label(n, -1);
    std::vector<std::size_t> stack;
    for (std::size_t s = 0; s < n; ++s) {
        if (z[s] == 0 || label[s] >= 0)
            continue;
        label[s] = static_cast<long>(s);
        stack.push_back(s);
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            for (std::size_t u = 0; u < n; ++u)
                if (z[u] > 0 && label[u] < 0 && cfg(v, u) >= 1) {
                    label[u] = static_cast<long>(s);
                    stack.push_back(u);
                }
        }
    }
    return label;
}

} // namespace detail

inline Int reduced_h0(const SurfaceConfiguration& cfg, std::span<const Int> z) {
    detail::require_reduced_shadow(cfg, z);
    const auto label = detail::support_components(cfg, z);
    Int count = 0;
    for (std::size_t i = 0; i < label.size(); ++i)
        if (label[i] == static_cast<long>(i))
            ++count;
    return count;
}

inline Int reduced_h0(const Divisor& z) { return reduced_h0(z.config(), z.mult()); }

// h¹(O_Z) = h⁰(O_Z) - 1 + p_a(Z)
inline Int reduced_h1(const SurfaceConfiguration& cfg, std::span<const Int> z) {
    return checked_add(reduced_h0(cfg, z) - 1, genus_of(cfg, z));
}

inline Int reduced_h1(const Divisor& z) { return reduced_h1(z.config(), z.mult()); }

namespace detail {

// visit(a) for every reduced 0 ≺ a ≼ z in counting order; may return false to stop.
template <class Visitor>
void for_each_reduced_subcurve(std::span<const Int> z, const EnumerationBudget& budget, Visitor&& visit) {
    Multiplicity cap(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        cap[i] = z[i] > 0 ? 1 : 0;
    for_each_subcurve(cap, budget, std::forward<Visitor>(visit));
}

} // namespace detail

// For a 1-connected D and reduced A ≺ D: h⁰(O_A) ≤ A·(D - A).
inline CheckResult lemma_b_shadow_check(const SurfaceConfiguration& cfg, std::span<const Int> d,
                                        const EnumerationBudget& budget = {}) {
    if (!cfg.snc_faithful())
        throw PreconditionError("h0 bound check requires an snc_faithful configuration");
    if (!is_m_connected(cfg, d, 1, budget))
        throw PreconditionError("divisor " + format_mult(d) + " is not 1-connected");
    CheckResult r{"h0_bounded_by_pairing", CheckStatus::pass, {}, std::nullopt};
    std::uint64_t checked = 0;
    Multiplicity rest(d.size());
    detail::for_each_reduced_subcurve(d, budget, [&](const Multiplicity& a) {
        if (std::equal(a.begin(), a.end(), d.begin()))
            return true;
        for (std::size_t i = 0; i < d.size(); ++i)
            rest[i] = d[i] - a[i];
        const Int h0 = reduced_h0(cfg, a);
        const Int b = intersect(cfg, a, rest);
        ++checked;
        if (h0 > b) {
            r.status = CheckStatus::fail;
            r.detail = "h0(" + format_mult(a) + ") = " + std::to_string(h0) + " exceeds A(D-A) = " +
                       std::to_string(b);
            r.witness = a;
            return false;
        }
        return true;
    });
    if (r.status == CheckStatus::pass)
        r.detail = std::to_string(checked) + " reduced proper subcurves checked";
    return r;
}

inline CheckResult lemma_b_shadow_check(const Divisor& d, const EnumerationBudget& budget = {}) {
    return lemma_b_shadow_check(d.config(), d.mult(), budget);
}

// Reduced A with h⁰(O_A) ≥ 2 splits as A1 + A2 with A1 the connected component of the support
// graph containing the smallest support index; then A1·A2 = 0 and Γ·A2 = 0 for Γ in A1.
inline Decomposition lemma_dec_reduced_witness(const SurfaceConfiguration& cfg, std::span<const Int> a) {
    detail::require_reduced_shadow(cfg, a);
    const auto label = detail::support_components(cfg, a);
    long first = -1;
    Int components = 0;
    for (std::size_t i = 0; i < label.size(); ++i)
        if (label[i] == static_cast<long>(i)) {
            if (first < 0)
                first = static_cast<long>(i);
            ++components;
        }
    if (components < 2)
        throw PreconditionError("no identically-vanishing section exists in the reduced shadow: " +
                                format_mult(a) + " is connected");
    Decomposition dec{Multiplicity(a.size(), 0), Multiplicity(a.size(), 0)};
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0)
            continue;
        (label[i] == first ? dec.a : dec.b)[i] = 1;
    }
    return dec;
}

inline Decomposition lemma_dec_reduced_witness(const Divisor& a) {
    return lemma_dec_reduced_witness(a.config(), a.mult());
}

// A = B_1 + ... + B_b with B_i·(D - A) = 1, each B_i 1-connected, B_i·(B_{i+1} + ... + B_b) = 0,
// and B_i either ≼ or support-disjoint from the tail.
struct ChainDecomposition {
    Multiplicity d;
    Multiplicity a;
    std::vector<Multiplicity> pieces;
    friend bool operator==(const ChainDecomposition&, const ChainDecomposition&) = default;
};

namespace detail {

class ChainSearch {
public:
    ChainSearch(const SurfaceConfiguration& cfg, std::span<const Int> complement, const EnumerationBudget& budget)
        : cfg_(cfg), complement_(complement.begin(), complement.end()), budget_(budget) {}

    bool run(const Multiplicity& tail) {
        if (is_zero(tail))
            return true;
        if (failed_.count(tail))
            return false;
        // Candidates are all 0 ≺ B ≼ tail in counting order.
        Multiplicity piece(tail.size(), 0);
        Multiplicity rest(tail.size());
        while (box_advance(piece, tail)) {
            if (++examined_ > budget_.max_candidates)
                throw BudgetExceeded(examined_, budget_.max_candidates);
            if (intersect(cfg_, piece, complement_) != 1)
                continue;
            for (std::size_t i = 0; i < tail.size(); ++i)
                rest[i] = tail[i] - piece[i];
            if (intersect(cfg_, piece, rest) != 0)
                continue;
            if (!is_subdivisor(std::span<const Int>(piece), std::span<const Int>(rest)) &&
                !supports_disjoint(piece, rest))
                continue;
            if (!is_m_connected(cfg_, piece, 1, budget_))
                continue;
            pieces_.push_back(piece);
            if (run(rest))
                return true;
            pieces_.pop_back();
        }
        failed_.insert(tail);
        return false;
    }

    std::vector<Multiplicity>& pieces() { return pieces_; }

private:
    const SurfaceConfiguration& cfg_;
    Multiplicity complement_;
    EnumerationBudget budget_;
    std::uint64_t examined_ = 0;
    std::vector<Multiplicity> pieces_;
    std::set<Multiplicity> failed_;
};

} // namespace detail

// Depth-first search, candidates in counting order; returns the first complete chain found.
inline std::optional<ChainDecomposition> chain_decomposition_search(const SurfaceConfiguration& cfg,
                                                                    std::span<const Int> d,
                                                                    std::span<const Int> a,
                                                                    const EnumerationBudget& budget = {}) {
    validate_budget(budget);
    if (is_zero(a) || !is_subdivisor(a, d) || std::equal(a.begin(), a.end(), d.begin()))
        throw PreconditionError("chain search requires 0 < A < D, got A = " + format_mult(a) +
                                ", D = " + format_mult(d));
    if (!is_m_connected(cfg, d, 1, budget))
        throw PreconditionError("chain search requires D 1-connected, got " + format_mult(d));
    const Multiplicity complement = difference(d, a);
    if (intersect(cfg, a, complement) < 1)
        throw PreconditionError("chain search requires A(D-A) >= 1");

    detail::ChainSearch search(cfg, complement, budget);
    const Multiplicity start(a.begin(), a.end());
    if (!search.run(start))
        return std::nullopt;
    return ChainDecomposition{Multiplicity(d.begin(), d.end()), start, std::move(search.pieces())};
}

inline std::optional<ChainDecomposition> chain_decomposition_search(const Divisor& d, const Divisor& a,
                                                                    const EnumerationBudget& budget = {}) {
    require_same_configuration(d, a);
    return chain_decomposition_search(d.config(), d.mult(), a.mult(), budget);
}

struct ConsistencyReport {
    Multiplicity d;
    Multiplicity z;
    std::vector<CheckResult> checks;
    Int predicted_h0 = 0; // (D - Z)·Z + p_a(Z)
    std::optional<Int> observed_h0; // reduced shadow of h⁰(O_{D-Z}), when available
    std::optional<ChainDecomposition> chain;
    std::string note;

    bool consistent() const {
        return std::none_of(checks.begin(), checks.end(),
                            [](const CheckResult& c) { return c.status == CheckStatus::fail; });
    }
    friend bool operator==(const ConsistencyReport&, const ConsistencyReport&) = default;
};

namespace check_names {
inline constexpr const char* one_connected = "0_d_one_connected";
inline constexpr const char* rational = "i_components_smooth_rational";
inline constexpr const char* subcurve_genus = "ii_subcurve_genus_nonpositive";
inline constexpr const char* genus_iff_connected = "iii_genus_zero_iff_one_connected";
inline constexpr const char* h0_prediction = "iv_h0_of_complement";
inline constexpr const char* chain = "furthermore_chain_decomposition";
} // namespace check_names

// Certifies the numerical consequences of the user's assertion that Z lies in the fixed part of
// |ω_D|. Any failed check means the data is inconsistent with that assertion.
inline ConsistencyReport fixed_part_report(const SurfaceConfiguration& cfg, std::span<const Int> d,
                                           std::span<const Int> z, const EnumerationBudget& budget = {}) {
    validate_budget(budget);
    if (is_zero(z) || !is_subdivisor(z, d) || std::equal(z.begin(), z.end(), d.begin()))
        throw PreconditionError("z must be a proper subdivisor of d: z = " + format_mult(z) +
                                ", d = " + format_mult(d));
    namespace cn = check_names;
    ConsistencyReport rep;
    rep.d.assign(d.begin(), d.end());
    rep.z.assign(z.begin(), z.end());
    rep.note = "Z is asserted (not computed) to lie in the fixed part of |omega_D|; "
               "triviality of O_{B_i}(-tail) is checked numerically as degree zero only.";
    const Multiplicity rest = difference(d, z);
    const Int pa_z = genus_of(cfg, z);
    const Int b = intersect(cfg, rest, z);
    rep.predicted_h0 = checked_add(b, pa_z);

    const auto conn_d = connectedness_number(cfg, d, budget);
    if (!conn_d.conn.at_least(1)) {
        rep.checks.push_back({cn::one_connected, CheckStatus::fail,
                              "D has connectedness number " + conn_d.conn.to_string(), conn_d.argmin->a});
        for (const char* name : {cn::rational, cn::subcurve_genus, cn::genus_iff_connected, cn::h0_prediction,
                                 cn::chain})
            rep.checks.push_back({name, CheckStatus::not_applicable, "requires D 1-connected", std::nullopt});
        return rep;
    }
    rep.checks.push_back({cn::one_connected, CheckStatus::pass,
                          "connectedness number " + conn_d.conn.to_string(), std::nullopt});

    // i)
    {
        CheckResult c{cn::rational, CheckStatus::pass, "every component of Z has genus 0", std::nullopt};
        for (std::size_t i = 0; i < z.size(); ++i) {
            if (z[i] == 0 || component_genus(cfg, i) == 0)
                continue;
            c.status = CheckStatus::fail;
            c.detail = "component " + cfg.component_name(i) + " has genus " +
                       std::to_string(component_genus(cfg, i));
            c.witness = Multiplicity(z.size(), 0);
            (*c.witness)[i] = 1;
            break;
        }
        rep.checks.push_back(std::move(c));
    }

    // ii)
    {
        CheckResult c{cn::subcurve_genus, CheckStatus::pass, {}, std::nullopt};
        const auto spectrum = genus_spectrum(cfg, z, budget);
        if (!spectrum.all_nonpositive) {
            c.status = CheckStatus::fail;
            c.detail = "subcurve " + format_mult(spectrum.witness) + " has p_a = " + std::to_string(spectrum.max_pa);
            c.witness = spectrum.witness;
        } else if (cfg.snc_faithful()) {
            c.detail = "max p_a over subcurves " + std::to_string(spectrum.max_pa) +
                       "; h1 = 0 on every reduced subcurve";
            detail::for_each_reduced_subcurve(z, budget, [&](const Multiplicity& s) {
                const Int h1 = reduced_h1(cfg, s);
                if (h1 == 0)
                    return true;
                c.status = CheckStatus::fail;
                c.detail = "reduced subcurve " + format_mult(s) + " has h1 = " + std::to_string(h1);
                c.witness = s;
                return false;
            });
        } else {
            c.detail = "max p_a over subcurves " + std::to_string(spectrum.max_pa) +
                       "; h1 shadow skipped (configuration not snc_faithful)";
        }
        rep.checks.push_back(std::move(c));
    }

    // iii)
    {
        CheckResult c = prop_go_check(cfg, z, budget);
        c.name = cn::genus_iff_connected;
        rep.checks.push_back(std::move(c));
    }

    // iv)
    {
        CheckResult c{cn::h0_prediction, CheckStatus::pass, {}, std::nullopt};
        const std::string predicted = "predicted h0(D-Z) = (D-Z)Z + p_a(Z) = " + std::to_string(b) + " + " +
                                      std::to_string(pa_z) + " = " + std::to_string(rep.predicted_h0);
        if (cfg.snc_faithful() && is_reduced(rest)) {
            rep.observed_h0 = reduced_h0(cfg, rest);
            c.detail = predicted + ", reduced shadow h0 = " + std::to_string(*rep.observed_h0);
            if (*rep.observed_h0 != rep.predicted_h0) {
                c.status = CheckStatus::fail;
                c.witness = rest;
            }
        } else if (rep.predicted_h0 < 1) {
            c.status = CheckStatus::fail;
            c.detail = predicted + ", but h0 of a curve is at least 1";
            c.witness = rest;
        } else {
            c.status = CheckStatus::not_applicable;
            c.detail = predicted + "; no h0 shadow (D-Z non-reduced or configuration not snc_faithful)";
        }
        rep.checks.push_back(std::move(c));
    }

    // Furthermore
    {
        CheckResult c{cn::chain, CheckStatus::pass, {}, std::nullopt};
        if (pa_z != 0) {
            c.status = CheckStatus::not_applicable;
            c.detail = "p_a(Z) = " + std::to_string(pa_z) + " != 0";
        } else {
            rep.chain = chain_decomposition_search(cfg, d, rest, budget);
            if (rep.chain) {
                c.detail = "D-Z = ";
                for (std::size_t i = 0; i < rep.chain->pieces.size(); ++i)
                    c.detail += (i ? " + " : "") + format_mult(rep.chain->pieces[i]);
            } else {
                c.status = CheckStatus::fail;
                c.detail = "no chain of " + std::to_string(b) + " pieces decomposes D-Z";
                c.witness = rest;
            }
        }
        rep.checks.push_back(std::move(c));
    }
    return rep;
}

inline ConsistencyReport fixed_part_report(const Divisor& d, const Divisor& z, const EnumerationBudget& budget = {}) {
    require_same_configuration(d, z);
    return fixed_part_report(d.config(), d.mult(), z.mult(), budget);
}

} // namespace oneconn
