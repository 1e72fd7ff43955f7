#pragma once

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "oneconn/checked_int.hpp"
#include "oneconn/config.hpp"

namespace oneconn {

// aᵀ·M·b with overflow detection.
inline Int intersect(const SurfaceConfiguration& cfg, std::span<const Int> a, std::span<const Int> b) {
    const std::size_t n = cfg.size();
    Int total = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0)
            continue;
        Int row = 0;
        const auto r = cfg.row(i);
        for (std::size_t j = 0; j < n; ++j)
            if (b[j] != 0)
                row = checked_add(row, checked_mul(r[j], b[j]));
        total = checked_add(total, checked_mul(a[i], row));
    }
    return total;
}

inline Int intersect(const Divisor& a, const Divisor& b) {
    require_same_configuration(a, b);
    return intersect(a.config(), a.mult(), b.mult());
}

inline Int canonical_degree(const SurfaceConfiguration& cfg, std::span<const Int> d) {
    Int total = 0;
    for (std::size_t i = 0; i < cfg.size(); ++i)
        total = checked_add(total, checked_mul(cfg.k(i), d[i]));
    return total;
}

// 1 + (D² + K·D)/2. Also defined for the zero vector (value 1), which internal callers rely on.
inline Int genus_of(const SurfaceConfiguration& cfg, std::span<const Int> d) {
    const Int twice = checked_add(intersect(cfg, d, d), canonical_degree(cfg, d));
    return checked_add(twice / 2, 1);
}

struct GenusReport {
    Multiplicity divisor;
    Int self_int = 0; // D²
    Int k_degree = 0; // K·D
    Int pa = 0;
    friend bool operator==(const GenusReport&, const GenusReport&) = default;
};

inline GenusReport arithmetic_genus(const Divisor& d) {
    GenusReport r;
    r.divisor = d.mult();
    r.self_int = intersect(d.config(), d.mult(), d.mult());
    r.k_degree = canonical_degree(d.config(), d.mult());
    const Int twice = checked_add(r.self_int, r.k_degree);
    // Exact by the per-component parity invariant: D² + K·D ≡ Σ d_i (M_ii + k_i) (mod 2).
    r.pa = checked_add(twice / 2, 1);
    return r;
}

struct AdditivityCheck {
    Int lhs = 0; // pa(d1 + d2)
    Int rhs = 0; // pa(d1) + pa(d2) - 1 + d1·d2
    bool equal = false;
};

inline AdditivityCheck additivity_check(const SurfaceConfiguration& cfg, std::span<const Int> d1,
                                        std::span<const Int> d2) {
    Multiplicity sum(d1.size());
    for (std::size_t i = 0; i < sum.size(); ++i)
        sum[i] = checked_add(d1[i], d2[i]);
    AdditivityCheck c;
    c.lhs = genus_of(cfg, sum);
    c.rhs = checked_add(checked_sub(checked_add(genus_of(cfg, d1), genus_of(cfg, d2)), 1),
                        intersect(cfg, d1, d2));
    c.equal = c.lhs == c.rhs;
    return c;
}

inline AdditivityCheck additivity_check(const Divisor& d1, const Divisor& d2) {
    require_same_configuration(d1, d2);
    return additivity_check(d1.config(), d1.mult(), d2.mult());
}

namespace detail {

// Throws unless 8·max(|M|,|k|)·(Σ bound)² fits in Int. Every quantity a QuadraticWalk over the
// box of `bound` touches (with a linear form built from M or k) stays below that.
inline void require_headroom(const SurfaceConfiguration& cfg, std::span<const Int> bound) {
    Int total = 0;
    for (Int v : bound)
        total = checked_add(total, v);
    checked_mul(checked_mul(checked_mul(total, total), std::max<Int>(cfg.max_abs_entry(), 1)), 8);
}

// Walks the box 0 ≤ a ≤ bound in counting order, maintaining aᵀMa and a·linear incrementally
// (O(n) per step). Callers must have passed require_headroom() for the same bound.
class QuadraticWalk {
public:
    QuadraticWalk(const SurfaceConfiguration& cfg, std::span<const Int> bound, std::vector<Int> linear,
                  Multiplicity start)
        : cfg_(cfg), bound_(bound), linear_(std::move(linear)), a_(std::move(start)), ma_(cfg.size(), 0) {
        const std::size_t n = cfg.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                ma_[i] += cfg(i, j) * a_[j];
        for (std::size_t i = 0; i < n; ++i) {
            lin_ += a_[i] * linear_[i];
            quad_ += a_[i] * ma_[i];
        }
    }

    const Multiplicity& point() const noexcept { return a_; }
    Int quadratic() const noexcept { return quad_; }
    Int linear() const noexcept { return lin_; }

    // false when the walk wraps around to 0.
    bool advance() {
        for (std::size_t i = 0; i < a_.size(); ++i) {
            if (a_[i] < bound_[i]) {
                shift(i, 1);
                return true;
            }
            if (a_[i] != 0)
                shift(i, -a_[i]);
        }
        return false;
    }

private:
    void shift(std::size_t i, Int delta) {
        lin_ += delta * linear_[i];
        quad_ += 2 * delta * ma_[i] + delta * delta * cfg_(i, i);
        const auto col = cfg_.row(i);
        for (std::size_t j = 0; j < ma_.size(); ++j)
            ma_[j] += delta * col[j];
        a_[i] += delta;
    }

    const SurfaceConfiguration& cfg_;
    std::span<const Int> bound_;
    std::vector<Int> linear_;
    Multiplicity a_;
    std::vector<Int> ma_;
    Int quad_ = 0;
    Int lin_ = 0;
};

} // namespace detail

} // namespace oneconn
