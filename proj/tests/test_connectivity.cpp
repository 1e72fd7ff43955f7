#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "test_support.hpp"

using namespace oneconn;
using testing_support::to_library;
using testing_support::to_oracle;
using testing_support::to_vec;

namespace {

Divisor a2_d() { return Divisor(to_library(oracle::a2()), {1, 1}); }
Divisor i3_d(Int m = 1) { return Divisor(to_library(oracle::i3()), {m, m, m}); }
Divisor star2_d() { return Divisor(to_library(oracle::star2()), {1, 1, 1}); }

void expect_matches_oracle(const Divisor& d, const ConnectivityResult& r) {
    const auto o = oracle::conn(to_oracle(d.config()), to_vec(d.mult()));
    ASSERT_EQ(r.conn.is_infinite(), o.infinite) << format_mult(d.mult());
    if (o.infinite) {
        EXPECT_FALSE(r.argmin.has_value());
        return;
    }
    EXPECT_EQ(r.conn.value(), o.value) << format_mult(d.mult());
    ASSERT_TRUE(r.argmin.has_value());
    EXPECT_EQ(to_vec(r.argmin->a), o.argmin) << format_mult(d.mult());
    EXPECT_EQ(intersect(d.config(), r.argmin->a, r.argmin->b), r.conn.value());
}

} // namespace

TEST(Decompositions, Counts) {
    const auto a2 = enumerate_decompositions(a2_d());
    ASSERT_EQ(a2.size(), 1u);
    EXPECT_EQ(a2[0].a, (Multiplicity{1, 0}));
    EXPECT_EQ(a2[0].b, (Multiplicity{0, 1}));
    EXPECT_EQ(enumerate_decompositions(i3_d()).size(), 3u);

    RawConfiguration raw;
    raw.matrix = {{-2}};
    raw.k = {0};
    EXPECT_TRUE(enumerate_decompositions(Divisor(make_configuration(raw), {1})).empty());
}

// Every unordered pair appears exactly once, with A the smaller of the two in counting order.
TEST(Decompositions, EachUnorderedPairOnce) {
    const auto cfg = to_library(oracle::i3());
    for (const Multiplicity& m : {Multiplicity{1, 1, 1}, Multiplicity{2, 0, 1}, Multiplicity{2, 3, 1},
                                  Multiplicity{2, 2, 2}, Multiplicity{0, 4, 0}}) {
        const Divisor d(cfg, m);
        std::set<std::pair<oracle::Vec, oracle::Vec>> expected;
        for (const auto& a : oracle::proper_parts(to_vec(m))) {
            auto b = oracle::minus(to_vec(m), a);
            expected.insert(oracle::colex_less(b, a) ? std::pair{b, a} : std::pair{a, b});
        }
        std::set<std::pair<oracle::Vec, oracle::Vec>> seen;
        for (const auto& dec : enumerate_decompositions(d)) {
            EXPECT_FALSE(oracle::colex_less(to_vec(dec.b), to_vec(dec.a)));
            EXPECT_EQ(oracle::plus(to_vec(dec.a), to_vec(dec.b)), to_vec(m));
            EXPECT_TRUE(seen.insert({to_vec(dec.a), to_vec(dec.b)}).second);
        }
        EXPECT_EQ(seen, expected) << format_mult(m);
    }
}

TEST(Decompositions, BudgetErrorNamesRequirement) {
    const auto cfg = to_library(oracle::i3());
    const Divisor d(cfg, {9, 9, 9});
    try {
        enumerate_decompositions(d, EnumerationBudget{10});
        FAIL();
    } catch (const BudgetExceeded& e) {
        EXPECT_EQ(e.required(), 499u);
        EXPECT_EQ(e.allowed(), 10u);
        EXPECT_NE(std::string(e.what()).find("499"), std::string::npos);
    }
    EXPECT_THROW(connectedness_number(d, EnumerationBudget{10}), BudgetExceeded);
    EXPECT_THROW(validate_budget(EnumerationBudget{0}), InputError);
    EXPECT_EQ(decomposition_count(Multiplicity{9, 9, 9}, EnumerationBudget{499}), 499u);
}

TEST(Connectedness, Goldens) {
    const auto a2 = connectedness_number(a2_d());
    EXPECT_EQ(a2.conn.value(), 1);
    const auto i3 = connectedness_number(i3_d());
    EXPECT_EQ(i3.conn.value(), 2);
    const auto fibre = connectedness_number(i3_d(2));
    EXPECT_EQ(fibre.conn.value(), 0);
    ASSERT_TRUE(fibre.argmin);
    EXPECT_EQ(fibre.argmin->a, (Multiplicity{1, 1, 1}));

    // Same values from the brute-force reference.
    EXPECT_EQ(oracle::conn(oracle::a2(), {1, 1}).value, 1);
    EXPECT_EQ(oracle::conn(oracle::i3(), {1, 1, 1}).value, 2);
    const auto o = oracle::conn(oracle::i3(), {2, 2, 2});
    EXPECT_EQ(o.value, 0);
    EXPECT_EQ(o.argmin, (oracle::Vec{1, 1, 1}));
}

TEST(Connectedness, IrreducibleIsInfinite) {
    RawConfiguration raw;
    raw.matrix = {{-1}};
    raw.k = {-1};
    const Divisor d(make_configuration(raw), {1});
    const auto r = connectedness_number(d);
    EXPECT_TRUE(r.conn.is_infinite());
    EXPECT_EQ(r.conn.to_string(), "infinity");
    EXPECT_FALSE(r.argmin);
    EXPECT_EQ(r.candidates_examined, 0u);
    EXPECT_TRUE(is_m_connected(d, 1000));
}

TEST(MConnected, Examples) {
    EXPECT_TRUE(is_m_connected(i3_d(), 2));
    EXPECT_FALSE(is_m_connected(i3_d(), 3));
    EXPECT_TRUE(is_m_connected(a2_d(), 1));
    EXPECT_FALSE(is_m_connected(i3_d(2), 1));
}

TEST(Connectedness, OracleEquivalenceSerialAndParallel) {
    SamplerSpec spec;
    spec.seed = 21;
    spec.n_max = 5;
    spec.mult_max = 3;
    spec.edge_max = 2;
    spec.k_policy = GenusPolicy::rational_or_elliptic;
    ConnectivityOptions parallel;
    parallel.threads = 4;
    parallel.parallel_threshold = 1;
    for (const auto& inst : sample_random(spec, 150)) {
        const auto serial = connectedness_number(inst.divisor);
        expect_matches_oracle(inst.divisor, serial);
        const auto par = connectedness_number(inst.divisor, {}, parallel);
        EXPECT_EQ(par.conn, serial.conn);
        EXPECT_EQ(par.argmin, serial.argmin);
        EXPECT_EQ(par.candidates_examined, serial.candidates_examined);
        for (Int m = -2; m <= 3; ++m)
            EXPECT_EQ(is_m_connected(inst.divisor, m), oracle::m_connected(to_oracle(*inst.config), to_vec(inst.divisor.mult()), m));
    }
}

TEST(Connectedness, ScheduleIndependent) {
    const auto cfg = to_library(oracle::i3());
    const Divisor d(cfg, {4, 4, 4});
    const auto reference = connectedness_number(d);
    for (unsigned threads : {2u, 3u, 5u, 8u}) {
        ConnectivityOptions opts;
        opts.threads = threads;
        opts.parallel_threshold = 1;
        const auto r = connectedness_number(d, {}, opts);
        EXPECT_EQ(r.conn, reference.conn);
        EXPECT_EQ(r.argmin, reference.argmin);
        EXPECT_EQ(is_m_connected(d, 1, {}, opts), is_m_connected(d, 1));
    }
}

TEST(Connectedness, RelabelingInvariant) {
    SamplerSpec spec;
    spec.seed = 22;
    spec.n_max = 5;
    spec.mult_max = 3;
    std::mt19937_64 rng(22);
    for (const auto& inst : sample_random(spec, 100)) {
        const auto& cfg = *inst.config;
        const std::size_t n = cfg.size();
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        RawConfiguration raw;
        raw.matrix.assign(n, std::vector<Int>(n));
        raw.k.resize(n);
        Multiplicity mult(n);
        for (std::size_t i = 0; i < n; ++i) {
            raw.k[i] = cfg.k(perm[i]);
            mult[i] = inst.divisor[perm[i]];
            for (std::size_t j = 0; j < n; ++j)
                raw.matrix[i][j] = cfg(perm[i], perm[j]);
        }
        const Divisor permuted(make_configuration(raw), mult);
        EXPECT_EQ(connectedness_number(permuted).conn, connectedness_number(inst.divisor).conn);
    }
}

TEST(Connectedness, MultipleFibresOnCycles) {
    for (std::size_t n = 3; n <= 6; ++n) {
        const auto inst = gen_cycle(n);
        for (Int t = 2; t <= 3; ++t) {
            const auto d = gen_multiple_fiber(inst.divisor, t);
            const auto r = connectedness_number(d);
            EXPECT_EQ(r.conn.value(), 0) << n << " " << t;
        }
    }
}

TEST(SplitConnectivity, Examples) {
    const auto a2 = split_connectivity_check(a2_d(), 1);
    EXPECT_EQ(a2.status, CheckStatus::pass);
    EXPECT_EQ(split_connectivity_check(i3_d(), 2).status, CheckStatus::pass);
    EXPECT_EQ(split_connectivity_check(star2_d(), 1).status, CheckStatus::pass);
    EXPECT_EQ(a2.name, "split_connectivity");
}

TEST(SplitConnectivity, Preconditions) {
    EXPECT_THROW(split_connectivity_check(i3_d(), 3), PreconditionError);
    EXPECT_THROW(split_connectivity_check(i3_d(2), 1), PreconditionError);
    EXPECT_THROW(split_connectivity_check(a2_d(), 0), PreconditionError);
}

// The split check agrees with a brute-force restatement on random 1-connected instances.
TEST(SplitConnectivity, AgreesWithOracle) {
    SamplerSpec spec;
    spec.seed = 23;
    spec.n_max = 4;
    spec.mult_max = 2;
    spec.edge_max = 2;
    spec.filter = SampleFilter::one_connected;
    for (const auto& inst : sample_random(spec, 100)) {
        const auto o = to_oracle(*inst.config);
        const auto d = to_vec(inst.divisor.mult());
        const auto c = oracle::conn(o, d);
        if (c.infinite)
            continue;
        const long long m = c.value;
        std::vector<oracle::Vec> attaining;
        bool ok = true;
        for (const auto& a : oracle::proper_parts(d)) {
            if (oracle::pair(o, a, oracle::minus(d, a)) != m)
                continue;
            attaining.push_back(a);
            ok = ok && oracle::m_connected(o, a, (m + 1) / 2);
        }
        for (const auto& a : attaining) {
            const bool minimal = std::none_of(attaining.begin(), attaining.end(), [&](const oracle::Vec& b) {
                return b != a && oracle::below(b, a);
            });
            if (minimal)
                ok = ok && oracle::m_connected(o, a, (m + 3) / 2);
        }
        const auto r = split_connectivity_check(inst.divisor, m);
        EXPECT_EQ(r.status == CheckStatus::pass, ok) << format_mult(inst.divisor.mult());
    }
}
