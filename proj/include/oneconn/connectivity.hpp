#pragma once

// Connectedness numbers: min over decompositions D = A + B of A·B, computed exactly by scanning
// the box of subdivisors. Each unordered pair {A, D - A} is visited once, as the member that
// comes first in counting order; for box index i the complement has index Π - 1 - i, so the
// scanned range is 1 ..= (Π - 1)/2.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <type_traits>
#include <utility>
#include <vector>

#include "oneconn/check.hpp"
#include "oneconn/checked_int.hpp"
#include "oneconn/config.hpp"
#include "oneconn/errors.hpp"
#include "oneconn/intersection.hpp"
#include "oneconn/lattice_box.hpp"

namespace oneconn {

struct EnumerationBudget {
    std::uint64_t max_candidates = 10'000'000;
};

inline void validate_budget(const EnumerationBudget& budget) {
    if (budget.max_candidates == 0)
        throw InputError("max_candidates must be positive");
}

// Min over an empty set is +infinity: an irreducible reduced divisor is m-connected for every m.
class Connectedness {
public:
    Connectedness() = default;
    static Connectedness infinite() { return {}; }
    static Connectedness finite(Int v) {
        Connectedness c;
        c.value_ = v;
        return c;
    }

    bool is_infinite() const noexcept { return !value_.has_value(); }
    Int value() const {
        if (!value_)
            throw std::logic_error("connectedness number is infinite");
        return *value_;
    }
    bool at_least(Int m) const noexcept { return !value_ || *value_ >= m; }
    std::string to_string() const { return value_ ? std::to_string(*value_) : std::string("infinity"); }

    friend bool operator==(const Connectedness&, const Connectedness&) = default;

private:
    std::optional<Int> value_;
};

struct ConnectivityResult {
    Multiplicity divisor;
    Connectedness conn;
    std::optional<Decomposition> argmin;
    std::uint64_t candidates_examined = 0;
    friend bool operator==(const ConnectivityResult&, const ConnectivityResult&) = default;
};

struct ConnectivityOptions {
    unsigned threads = 0; // 0: std::thread::hardware_concurrency()
    std::uint64_t parallel_threshold = 1u << 16;
};

// Highest box index scanned, i.e. the number of unordered decompositions. Throws
// BudgetExceeded when Π(d_i + 1) - 2 > 2 * max_candidates.
inline std::uint64_t decomposition_count(std::span<const Int> d, const EnumerationBudget& budget) {
    validate_budget(budget);
    const std::uint64_t box = box_size(d);
    if (box == saturated)
        throw BudgetExceeded(saturated, budget.max_candidates);
    if (box < 2)
        return 0;
    const auto twice_allowed = static_cast<unsigned __int128>(budget.max_candidates) * 2;
    if (static_cast<unsigned __int128>(box - 2) > twice_allowed)
        throw BudgetExceeded((box - 1) / 2, budget.max_candidates);
    return (box - 1) / 2;
}

namespace detail {

struct ScanBest {
    Int value = 0;
    std::uint64_t index = 0;
    bool found = false;
};

inline bool better(const ScanBest& x, const ScanBest& y) {
    if (!x.found)
        return false;
    if (!y.found)
        return true;
    return x.value < y.value || (x.value == y.value && x.index < y.index);
}

// Evaluates f(a) = a·(d - a) = a·(M d) - aᵀMa along a run of consecutive box indices.
class PairingScanner {
public:
    PairingScanner(const SurfaceConfiguration& cfg, std::span<const Int> d) : cfg_(cfg), d_(d) {
        require_headroom(cfg, d);
        const std::size_t n = cfg.size();
        md_.assign(n, 0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                md_[i] += cfg(i, j) * d[j];
    }

    ScanBest scan(std::uint64_t first, std::uint64_t last, std::optional<Int> stop_below,
                  std::atomic<bool>* stop_flag) const {
        QuadraticWalk walk(cfg_, d_, md_, box_digits(first, d_));
        ScanBest best;
        for (std::uint64_t idx = first;; ++idx) {
            const Int f = walk.linear() - walk.quadratic();
            if (!best.found || f < best.value) {
                best = {f, idx, true};
                if (stop_below && f < *stop_below) {
                    if (stop_flag)
                        stop_flag->store(true, std::memory_order_relaxed);
                    break;
                }
            }
            if (idx == last)
                break;
            if (stop_flag && (idx & 0x3ff) == 0 && stop_flag->load(std::memory_order_relaxed))
                break;
            walk.advance();
        }
        return best;
    }

private:
    const SurfaceConfiguration& cfg_;
    std::span<const Int> d_;
    std::vector<Int> md_;
};

// Scans indices 1..=last, split into contiguous chunks across workers. The reduction (smallest
// value, then smallest index) is associative and commutative, so the outcome does not depend on
// the schedule.
inline ScanBest scan_decompositions(const SurfaceConfiguration& cfg, std::span<const Int> d,
                                    std::uint64_t last, std::optional<Int> stop_below,
                                    const ConnectivityOptions& opts) {
    const PairingScanner scanner(cfg, d);
    if (last < opts.parallel_threshold)
        return scanner.scan(1, last, stop_below, nullptr);
    unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
    if (threads <= 1)
        return scanner.scan(1, last, stop_below, nullptr);

    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, last));
    std::vector<ScanBest> partial(threads);
    std::atomic<bool> stop{false};
    {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            const auto wide = static_cast<unsigned __int128>(last);
            const auto lo = static_cast<std::uint64_t>(1 + wide * t / threads);
            const auto hi = static_cast<std::uint64_t>(wide * (t + 1) / threads);
            workers.emplace_back([&, t, lo, hi] {
                partial[t] = scanner.scan(lo, hi, stop_below, stop_below ? &stop : nullptr);
            });
        }
    }
    ScanBest best;
    for (const auto& p : partial)
        if (better(p, best))
            best = p;
    return best;
}

} // namespace detail

inline ConnectivityResult connectedness_number(const SurfaceConfiguration& cfg, std::span<const Int> d,
                                               const EnumerationBudget& budget = {},
                                               const ConnectivityOptions& opts = {}) {
    ConnectivityResult r;
    r.divisor.assign(d.begin(), d.end());
    const std::uint64_t last = decomposition_count(d, budget);
    r.candidates_examined = last;
    if (last == 0)
        return r;
    const auto best = detail::scan_decompositions(cfg, d, last, std::nullopt, opts);
    r.conn = Connectedness::finite(best.value);
    Multiplicity a = box_digits(best.index, d);
    Multiplicity b = difference(d, a);
    r.argmin = Decomposition{std::move(a), std::move(b)};
    return r;
}

// Minimising decomposition ties are broken towards the A that comes first in counting order.
inline ConnectivityResult connectedness_number(const Divisor& d, const EnumerationBudget& budget = {},
                                               const ConnectivityOptions& opts = {}) {
    return connectedness_number(d.config(), d.mult(), budget, opts);
}

// Stops at the first decomposition with A·B < m.
inline bool is_m_connected(const SurfaceConfiguration& cfg, std::span<const Int> d, Int m,
                           const EnumerationBudget& budget = {}, const ConnectivityOptions& opts = {}) {
    const std::uint64_t last = decomposition_count(d, budget);
    if (last == 0)
        return true;
    const auto best = detail::scan_decompositions(cfg, d, last, m, opts);
    return best.value >= m;
}

inline bool is_m_connected(const Divisor& d, Int m, const EnumerationBudget& budget = {},
                           const ConnectivityOptions& opts = {}) {
    return is_m_connected(d.config(), d.mult(), m, budget, opts);
}

// Calls visit(const Decomposition&) once per unordered decomposition, in counting order of A.
// visit may return bool; false stops the enumeration.
template <class Visitor>
void for_each_decomposition(std::span<const Int> d, const EnumerationBudget& budget, Visitor&& visit) {
    const std::uint64_t last = decomposition_count(d, budget);
    Decomposition dec{Multiplicity(d.size(), 0), Multiplicity(d.begin(), d.end())};
    for (std::uint64_t idx = 1; idx <= last; ++idx) {
        box_advance(dec.a, d);
        for (std::size_t i = 0; i < d.size(); ++i)
            dec.b[i] = d[i] - dec.a[i];
        if constexpr (std::is_same_v<decltype(visit(std::as_const(dec))), bool>) {
            if (!visit(std::as_const(dec)))
                return;
        } else {
            visit(std::as_const(dec));
        }
    }
}

inline std::vector<Decomposition> enumerate_decompositions(const Divisor& d,
                                                           const EnumerationBudget& budget = {}) {
    std::vector<Decomposition> out;
    for_each_decomposition(d.mult(), budget, [&](const Decomposition& dec) { out.push_back(dec); });
    return out;
}

// For every decomposition of the m-connected d with A·B = m, both parts must be
// ⌊(m+1)/2⌋-connected; every A minimal (under ≼) among the parts attaining m must be
// ⌊(m+3)/2⌋-connected. A witness returned here refutes a known theorem, so it signals either an
// implementation bug or numerical data that no surface realises.
inline CheckResult split_connectivity_check(const SurfaceConfiguration& cfg, std::span<const Int> d, Int m,
                                            const EnumerationBudget& budget = {}) {
    if (m < 1)
        throw PreconditionError("split connectivity check requires m >= 1, got " + std::to_string(m));
    const auto conn = connectedness_number(cfg, d, budget);
    if (!conn.conn.at_least(m))
        throw PreconditionError("divisor " + format_mult(d) + " is not " + std::to_string(m) +
                                "-connected (connectedness number " + conn.conn.to_string() + ")");

    CheckResult r{"split_connectivity", CheckStatus::pass, {}, std::nullopt};
    const Int half = floor_div(m + 1, 2);
    const Int minimal_bound = floor_div(m + 3, 2);
    std::vector<Multiplicity> attaining;
    std::uint64_t splits = 0;

    for_each_decomposition(d, budget, [&](const Decomposition& dec) {
        if (intersect(cfg, dec.a, dec.b) != m)
            return true;
        ++splits;
        for (const auto* part : {&dec.a, &dec.b}) {
            if (!is_m_connected(cfg, *part, half, budget)) {
                r.status = CheckStatus::fail;
                r.detail = "part " + format_mult(*part) + " of a split attaining " + std::to_string(m) +
                           " is not " + std::to_string(half) + "-connected";
                r.witness = *part;
                return false;
            }
        }
        attaining.push_back(dec.a);
        if (dec.a != dec.b)
            attaining.push_back(dec.b);
        return true;
    });
    if (r.status == CheckStatus::fail)
        return r;

    std::uint64_t minimal = 0;
    for (const auto& a : attaining) {
        const bool is_minimal = std::none_of(attaining.begin(), attaining.end(), [&](const Multiplicity& o) {
            return o != a && is_subdivisor(std::span<const Int>(o), std::span<const Int>(a));
        });
        if (!is_minimal)
            continue;
        ++minimal;
        if (!is_m_connected(cfg, a, minimal_bound, budget)) {
            r.status = CheckStatus::fail;
            r.detail = "minimal part " + format_mult(a) + " attaining " + std::to_string(m) + " is not " +
                       std::to_string(minimal_bound) + "-connected";
            r.witness = a;
            return r;
        }
    }
    r.detail = std::to_string(splits) + " splits attain " + std::to_string(m) + ", " +
               std::to_string(minimal) + " minimal parts checked";
    return r;
}

inline CheckResult split_connectivity_check(const Divisor& d, Int m, const EnumerationBudget& budget = {}) {
    return split_connectivity_check(d.config(), d.mult(), m, budget);
}

} // namespace oneconn
