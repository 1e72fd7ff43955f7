#pragma once

// Named fixture families and a seeded random sampler. Everything produced here goes through
// validate_configuration().

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "oneconn/config.hpp"
#include "oneconn/connectivity.hpp"
#include "oneconn/errors.hpp"
#include "oneconn/lattice_box.hpp"
#include "oneconn/structure.hpp"

namespace oneconn {

struct Instance {
    ConfigPtr config;
    Divisor divisor;
};

namespace detail {

inline RawConfiguration empty_raw(std::string name, std::size_t n) {
    RawConfiguration raw;
    raw.name = std::move(name);
    raw.snc_faithful = true;
    raw.matrix.assign(n, std::vector<Int>(n, 0));
    raw.k.assign(n, 0);
    return raw;
}

inline Instance with_unit_divisor(RawConfiguration raw) {
    const std::size_t n = raw.k.size();
    auto cfg = make_configuration(std::move(raw));
    return {cfg, Divisor(cfg, Multiplicity(n, 1))};
}

} // namespace detail

// A_n-shaped path of components with equal self-intersection and K-degree.
inline Instance gen_chain(std::size_t length, Int self, Int k) {
    if (length < 1)
        throw InputError("chain length must be at least 1");
    auto raw = detail::empty_raw("chain" + std::to_string(length), length);
    for (std::size_t i = 0; i < length; ++i) {
        raw.matrix[i][i] = self;
        raw.k[i] = k;
        if (i + 1 < length)
            raw.matrix[i][i + 1] = raw.matrix[i + 1][i] = 1;
    }
    return detail::with_unit_divisor(std::move(raw));
}

// I_n-shaped cycle of (-2)-curves; D² = 0 and K·D = 0, so p_a(D) = 1.
inline Instance gen_cycle(std::size_t length) {
    if (length < 3)
        throw InputError("cycle length must be at least 3, got " + std::to_string(length));
    auto raw = detail::empty_raw("cycle" + std::to_string(length), length);
    for (std::size_t i = 0; i < length; ++i) {
        const std::size_t j = (i + 1) % length;
        raw.matrix[i][i] = -2;
        raw.matrix[i][j] = raw.matrix[j][i] = 1;
    }
    return detail::with_unit_divisor(std::move(raw));
}

// Core (-2)-curve (index 0) meeting each of `leaves` pairwise disjoint (-1)-curves once.
inline Instance gen_star(std::size_t leaves) {
    if (leaves < 1)
        throw InputError("star needs at least one leaf");
    const std::size_t n = leaves + 1;
    auto raw = detail::empty_raw("star" + std::to_string(leaves), n);
    raw.names.push_back("core");
    raw.matrix[0][0] = -2;
    for (std::size_t i = 1; i < n; ++i) {
        raw.names.push_back("leaf" + std::to_string(i));
        raw.matrix[i][i] = -1;
        raw.k[i] = -1;
        raw.matrix[0][i] = raw.matrix[i][0] = 1;
    }
    return detail::with_unit_divisor(std::move(raw));
}

inline Divisor gen_multiple_fiber(const Divisor& base, Int m) {
    if (m < 2)
        throw InputError("multiple fibre multiplier must be at least 2, got " + std::to_string(m));
    Multiplicity scaled(base.size());
    for (std::size_t i = 0; i < base.size(); ++i)
        scaled[i] = checked_mul(base[i], m);
    return base.with(std::move(scaled));
}

enum class SampleFilter { none, all_subcurve_pa_nonpositive, one_connected };

inline SampleFilter parse_sample_filter(std::string_view s) {
    if (s == "none" || s.empty()) return SampleFilter::none;
    if (s == "all_subcurve_pa_nonpositive") return SampleFilter::all_subcurve_pa_nonpositive;
    if (s == "one_connected") return SampleFilter::one_connected;
    throw InputError("unknown sample filter '" + std::string(s) + "'");
}

inline std::string_view to_string(SampleFilter f) {
    switch (f) {
    case SampleFilter::none: return "none";
    case SampleFilter::all_subcurve_pa_nonpositive: return "all_subcurve_pa_nonpositive";
    case SampleFilter::one_connected: return "one_connected";
    }
    return "?";
}

// Which component genera the sampler draws from; k[i] = 2g - 2 - M[i][i] keeps parity and
// genus non-negativity by construction.
enum class GenusPolicy { rational, rational_or_elliptic };

struct SamplerSpec {
    std::size_t n_max = 4;
    Int mult_max = 2;
    Int self_min = -3;
    Int self_max = 1;
    GenusPolicy k_policy = GenusPolicy::rational;
    double edge_density = 0.5;
    Int edge_max = 1; // positive off-diagonal entries are uniform in [1, edge_max]
    std::uint64_t seed = 0;
    SampleFilter filter = SampleFilter::none;
    std::size_t batch = 32; // instances are emitted per batch, smallest box first
    EnumerationBudget filter_budget{};
    bool snc_faithful = true;
};

inline void validate_sampler_spec(const SamplerSpec& s) {
    if (s.n_max < 1)
        throw InputError("sampler n_max must be at least 1");
    if (s.mult_max < 1)
        throw InputError("sampler mult_max must be at least 1");
    if (s.self_min > s.self_max)
        throw InputError("sampler self range is empty");
    if (!(s.edge_density >= 0.0 && s.edge_density <= 1.0))
        throw InputError("sampler edge_density must lie in [0, 1]");
    if (s.edge_max < 1)
        throw InputError("sampler edge_max must be at least 1");
    if (s.batch < 1)
        throw InputError("sampler batch must be at least 1");
}

class SamplerStalled : public InputError {
public:
    using InputError::InputError;
};

// Reproducible stream of validated (configuration, divisor) instances. The same spec (including
// seed) yields the same stream on the same standard library.
class Sampler {
public:
    static constexpr std::uint64_t rejection_window = 10'000;

    explicit Sampler(SamplerSpec spec) : spec_(spec), rng_(spec.seed) { validate_sampler_spec(spec_); }

    Instance next() {
        if (pending_.empty())
            refill();
        Instance out = std::move(pending_.front());
        pending_.erase(pending_.begin());
        ++emitted_;
        return out;
    }

    std::vector<Instance> take(std::size_t count) {
        std::vector<Instance> out;
        out.reserve(count);
        for (std::size_t i = 0; i < count; ++i)
            out.push_back(next());
        return out;
    }

    const SamplerSpec& spec() const noexcept { return spec_; }

private:
    Instance draw() {
        std::uniform_int_distribution<std::size_t> pick_n(1, spec_.n_max);
        std::uniform_int_distribution<Int> pick_self(spec_.self_min, spec_.self_max);
        std::uniform_int_distribution<Int> pick_genus(0, spec_.k_policy == GenusPolicy::rational ? 0 : 1);
        std::bernoulli_distribution pick_edge(spec_.edge_density);
        std::uniform_int_distribution<Int> pick_weight(1, spec_.edge_max);
        std::uniform_int_distribution<Int> pick_mult(0, spec_.mult_max);

        const std::size_t n = pick_n(rng_);
        auto raw = detail::empty_raw("sample" + std::to_string(drawn_++), n);
        raw.snc_faithful = spec_.snc_faithful;
        for (std::size_t i = 0; i < n; ++i) {
            raw.matrix[i][i] = pick_self(rng_);
            raw.k[i] = 2 * pick_genus(rng_) - 2 - raw.matrix[i][i];
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (pick_edge(rng_))
                    raw.matrix[i][j] = raw.matrix[j][i] = pick_weight(rng_);
        Multiplicity mult(n);
        for (auto& m : mult)
            m = pick_mult(rng_);
        if (is_zero(mult))
            mult[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_)] = 1;
        auto cfg = make_configuration(std::move(raw));
        return {cfg, Divisor(cfg, std::move(mult))};
    }

    bool accept(const Instance& inst) const {
        switch (spec_.filter) {
        case SampleFilter::none:
            return true;
        case SampleFilter::one_connected:
            return is_m_connected(inst.divisor, 1, spec_.filter_budget);
        case SampleFilter::all_subcurve_pa_nonpositive:
            return !first_positive_genus_subcurve(*inst.config, inst.divisor.mult(), spec_.filter_budget);
        }
        return false;
    }

    void refill() {
        while (pending_.size() < spec_.batch) {
            Instance inst = draw();
            ++window_attempts_;
            if (accept(inst)) {
                ++window_accepted_;
                pending_.push_back(std::move(inst));
            }
            if (window_attempts_ == rejection_window) {
                // More than 99.9% rejected over the window.
                if (window_accepted_ * 1000 < rejection_window)
                    throw SamplerStalled("sampler filter '" + std::string(to_string(spec_.filter)) + "' rejected " +
                                         std::to_string(rejection_window - window_accepted_) + " of " +
                                         std::to_string(rejection_window) + " draws; widen the sampler spec");
                window_attempts_ = window_accepted_ = 0;
            }
        }
        std::stable_sort(pending_.begin(), pending_.end(), [](const Instance& x, const Instance& y) {
            return box_size(x.divisor.mult()) < box_size(y.divisor.mult());
        });
    }

    SamplerSpec spec_;
    std::mt19937_64 rng_;
    std::vector<Instance> pending_;
    std::uint64_t drawn_ = 0;
    std::uint64_t emitted_ = 0;
    std::uint64_t window_attempts_ = 0;
    std::uint64_t window_accepted_ = 0;
};

inline std::vector<Instance> sample_random(const SamplerSpec& spec, std::size_t count) {
    return Sampler(spec).take(count);
}

} // namespace oneconn
