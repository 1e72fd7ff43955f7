#pragma once

// Numerical data of a curve configuration on a smooth surface: the intersection matrix of the
// irreducible components, their canonical degrees, and effective divisors supported on them.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "oneconn/checked_int.hpp"
#include "oneconn/errors.hpp"

namespace oneconn {

using Multiplicity = std::vector<Int>;

// Unvalidated input, as read from a file or assembled by a generator.
struct RawConfiguration {
    std::string name;
    bool snc_faithful = false;
    std::vector<std::string> names; // empty: components are named G0, G1, ...
    std::vector<std::vector<Int>> matrix;
    std::vector<Int> k;
};

class SurfaceConfiguration;
SurfaceConfiguration validate_configuration(RawConfiguration raw);

// Validated, immutable configuration. Only obtainable through validate_configuration().
class SurfaceConfiguration {
public:
    std::size_t size() const noexcept { return k_.size(); }

    // Γ_i · Γ_j
    Int operator()(std::size_t i, std::size_t j) const noexcept { return matrix_[i * size() + j]; }
    std::span<const Int> row(std::size_t i) const noexcept { return {matrix_.data() + i * size(), size()}; }
    // K · Γ_i
    Int k(std::size_t i) const noexcept { return k_[i]; }
    std::span<const Int> k() const noexcept { return k_; }

    const std::string& name() const noexcept { return name_; }
    const std::string& component_name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& component_names() const noexcept { return names_; }
    bool snc_faithful() const noexcept { return snc_faithful_; }

    // Largest absolute value among matrix entries and k; used for overflow pre-checks.
    Int max_abs_entry() const noexcept { return max_abs_; }

    RawConfiguration raw() const {
        RawConfiguration r;
        r.name = name_;
        r.snc_faithful = snc_faithful_;
        r.names = names_;
        r.k = k_;
        r.matrix.assign(size(), std::vector<Int>(size()));
        for (std::size_t i = 0; i < size(); ++i)
            for (std::size_t j = 0; j < size(); ++j)
                r.matrix[i][j] = (*this)(i, j);
        return r;
    }

    friend bool operator==(const SurfaceConfiguration&, const SurfaceConfiguration&) = default;

private:
    friend SurfaceConfiguration validate_configuration(RawConfiguration raw);
    SurfaceConfiguration() = default;

    std::string name_;
    bool snc_faithful_ = false;
    std::vector<std::string> names_;
    std::vector<Int> matrix_; // row-major n*n
    std::vector<Int> k_;
    Int max_abs_ = 0;
};

using ConfigPtr = std::shared_ptr<const SurfaceConfiguration>;

namespace detail {
inline std::string pair_str(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}
inline Int abs_or_throw(Int v) {
    if (v == INT64_MIN)
        throw ArithmeticOverflow("integer overflow: |INT64_MIN|");
    return v < 0 ? -v : v;
}
} // namespace detail

// Checks, in order: shape, symmetry, non-negative off-diagonal entries, parity of
// M[i][i] + k[i], and non-negative component genus. The first violation is thrown as a
// ConfigError naming the offending index pair.
inline SurfaceConfiguration validate_configuration(RawConfiguration raw) {
    using Kind = ConfigError::Kind;
    const std::size_t n = raw.k.size();
    if (n == 0)
        throw ConfigError(Kind::shape, 0, 0, "shape: configuration has no components");
    if (raw.matrix.size() != n)
        throw ConfigError(Kind::shape, 0, 0,
                          "shape: intersection matrix has " + std::to_string(raw.matrix.size()) +
                              " rows, expected " + std::to_string(n));
    for (std::size_t i = 0; i < n; ++i)
        if (raw.matrix[i].size() != n)
            throw ConfigError(Kind::shape, i, i,
                              "shape: row " + std::to_string(i) + " has " +
                                  std::to_string(raw.matrix[i].size()) + " entries, expected " +
                                  std::to_string(n));
    if (!raw.names.empty() && raw.names.size() != n)
        throw ConfigError(Kind::shape, 0, 0,
                          "shape: " + std::to_string(raw.names.size()) + " component names for " +
                              std::to_string(n) + " components");

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (raw.matrix[i][j] != raw.matrix[j][i])
                throw ConfigError(Kind::asymmetric, i, j,
                                  "asymmetric intersection matrix at " + detail::pair_str(i, j) +
                                      ": " + std::to_string(raw.matrix[i][j]) +
                                      " != " + std::to_string(raw.matrix[j][i]));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (raw.matrix[i][j] < 0)
                throw ConfigError(Kind::negative_intersection, i, j,
                                  "negative intersection of distinct components at " +
                                      detail::pair_str(i, j) + ": " +
                                      std::to_string(raw.matrix[i][j]));
    for (std::size_t i = 0; i < n; ++i) {
        const Int sum = checked_add(raw.matrix[i][i], raw.k[i]);
        if (sum % 2 != 0)
            throw ConfigError(Kind::parity, i, i,
                              "parity: self-intersection + K-degree of component " +
                                  std::to_string(i) + " is odd (" + std::to_string(sum) + ")");
        if (sum / 2 + 1 < 0)
            throw ConfigError(Kind::negative_genus, i, i,
                              "negative genus: component " + std::to_string(i) + " has genus " +
                                  std::to_string(sum / 2 + 1));
    }

    SurfaceConfiguration cfg;
    cfg.name_ = std::move(raw.name);
    cfg.snc_faithful_ = raw.snc_faithful;
    if (raw.names.empty()) {
        cfg.names_.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            cfg.names_.push_back("G" + std::to_string(i));
    } else {
        cfg.names_ = std::move(raw.names);
    }
    cfg.matrix_.reserve(n * n);
    for (const auto& row : raw.matrix)
        for (Int v : row) {
            cfg.matrix_.push_back(v);
            cfg.max_abs_ = std::max(cfg.max_abs_, detail::abs_or_throw(v));
        }
    for (Int v : raw.k)
        cfg.max_abs_ = std::max(cfg.max_abs_, detail::abs_or_throw(v));
    cfg.k_ = std::move(raw.k);
    return cfg;
}

inline ConfigPtr make_configuration(RawConfiguration raw) {
    return std::make_shared<const SurfaceConfiguration>(validate_configuration(std::move(raw)));
}

// Arithmetic genus of the i-th irreducible component by adjunction.
inline Int component_genus(const SurfaceConfiguration& cfg, std::size_t i) {
    if (i >= cfg.size())
        throw InputError("component index " + std::to_string(i) + " out of range (n = " +
                         std::to_string(cfg.size()) + ")");
    return (cfg(i, i) + cfg.k(i)) / 2 + 1;
}

// A non-zero effective divisor Σ mult[i]·Γ_i on a configuration.
class Divisor {
public:
    Divisor(ConfigPtr config, Multiplicity mult) : config_(std::move(config)), mult_(std::move(mult)) {
        if (!config_)
            throw InputError("divisor without configuration");
        if (mult_.size() != config_->size())
            throw InputError("divisor has " + std::to_string(mult_.size()) +
                             " multiplicities, configuration has " +
                             std::to_string(config_->size()) + " components");
        bool nonzero = false;
        for (std::size_t i = 0; i < mult_.size(); ++i) {
            if (mult_[i] < 0)
                throw InputError("negative multiplicity at component " + std::to_string(i));
            nonzero = nonzero || mult_[i] > 0;
        }
        if (!nonzero)
            throw InputError("divisor must be non-zero");
    }

    const SurfaceConfiguration& config() const noexcept { return *config_; }
    const ConfigPtr& config_ptr() const noexcept { return config_; }
    const Multiplicity& mult() const noexcept { return mult_; }
    Int operator[](std::size_t i) const noexcept { return mult_[i]; }
    std::size_t size() const noexcept { return mult_.size(); }

    // Same configuration, other multiplicities.
    Divisor with(Multiplicity mult) const { return Divisor(config_, std::move(mult)); }

private:
    ConfigPtr config_;
    Multiplicity mult_;
};

// Ordered pair (A, D - A) of non-zero effective divisors.
struct Decomposition {
    Multiplicity a;
    Multiplicity b;
    friend bool operator==(const Decomposition&, const Decomposition&) = default;
};

inline bool same_configuration(const SurfaceConfiguration& x, const SurfaceConfiguration& y) {
    return &x == &y || x == y;
}

inline void require_same_configuration(const Divisor& x, const Divisor& y) {
    if (!same_configuration(x.config(), y.config()))
        throw InputError("divisors live on different configurations");
}

inline bool is_subdivisor(std::span<const Int> z1, std::span<const Int> z2) {
    for (std::size_t i = 0; i < z1.size(); ++i)
        if (z1[i] > z2[i])
            return false;
    return true;
}

// z1 ≼ z2
inline bool is_subdivisor(const Divisor& z1, const Divisor& z2) {
    require_same_configuration(z1, z2);
    return is_subdivisor(std::span<const Int>(z1.mult()), std::span<const Int>(z2.mult()));
}

inline bool is_zero(std::span<const Int> m) {
    for (Int v : m)
        if (v != 0)
            return false;
    return true;
}

inline bool is_reduced(std::span<const Int> m) {
    for (Int v : m)
        if (v > 1)
            return false;
    return true;
}

inline bool supports_disjoint(std::span<const Int> x, std::span<const Int> y) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] > 0 && y[i] > 0)
            return false;
    return true;
}

inline Multiplicity difference(std::span<const Int> x, std::span<const Int> y) {
    Multiplicity r(x.size());
    for (std::size_t i = 0; i < x.size(); ++i)
        r[i] = x[i] - y[i];
    return r;
}

struct SupportInfo {
    std::vector<std::size_t> support;
    bool reduced = true;
};

inline SupportInfo support_and_reducedness(const Divisor& z) {
    SupportInfo info;
    for (std::size_t i = 0; i < z.size(); ++i) {
        if (z[i] > 0)
            info.support.push_back(i);
        if (z[i] > 1)
            info.reduced = false;
    }
    return info;
}

} // namespace oneconn
