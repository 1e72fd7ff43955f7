#include <gtest/gtest.h>

#include <set>

#include "test_support.hpp"

using namespace oneconn;
using testing_support::to_library;
using testing_support::to_oracle;
using testing_support::to_vec;

namespace {

ConfigPtr a2() { return to_library(oracle::a2(), true, "A2"); }
ConfigPtr i3() { return to_library(oracle::i3(), true, "I3"); }
ConfigPtr disj2() { return to_library(oracle::disj2(), true, "DISJ2"); }
ConfigPtr star2() { return to_library(oracle::star2(), true, "STAR2"); }

const CheckResult& find_check(const ConsistencyReport& r, const std::string& name) {
    for (const auto& c : r.checks)
        if (c.name == name)
            return c;
    throw std::runtime_error("missing check " + name);
}

std::vector<oracle::Vec> chain_vecs(const ChainDecomposition& c) {
    std::vector<oracle::Vec> out;
    for (const auto& p : c.pieces)
        out.push_back(to_vec(p));
    return out;
}

} // namespace

TEST(Subcurves, Counts) {
    EXPECT_EQ(enumerate_subcurves(Divisor(a2(), {1, 1})).size(), 3u);
    EXPECT_EQ(enumerate_subcurves(Divisor(i3(), {1, 1, 1})).size(), 7u);
    const auto two = enumerate_subcurves(Divisor(a2(), {2, 0}));
    EXPECT_EQ(two, (std::vector<Multiplicity>{{1, 0}, {2, 0}}));
}

TEST(Subcurves, ExactlyOnceAgainstOracle) {
    for (const Multiplicity& m : {Multiplicity{2, 1, 3}, Multiplicity{0, 2, 0}, Multiplicity{1, 1, 1}}) {
        std::set<oracle::Vec> seen;
        for (const auto& s : enumerate_subcurves(Divisor(i3(), m)))
            EXPECT_TRUE(seen.insert(to_vec(s)).second);
        const auto expected = oracle::subcurves(to_vec(m));
        EXPECT_EQ(seen, std::set<oracle::Vec>(expected.begin(), expected.end()));
    }
    EXPECT_THROW(enumerate_subcurves(Divisor(i3(), {9, 9, 9}), EnumerationBudget{998}), BudgetExceeded);
    EXPECT_EQ(enumerate_subcurves(Divisor(i3(), {9, 9, 9}), EnumerationBudget{999}).size(), 999u);
}

TEST(GenusSpectrum, Examples) {
    const auto s1 = genus_spectrum(Divisor(a2(), {1, 1}));
    EXPECT_EQ(s1.max_pa, 0);
    EXPECT_EQ(s1.witness, (Multiplicity{1, 0}));
    EXPECT_TRUE(s1.all_nonpositive);
    const auto s2 = genus_spectrum(Divisor(i3(), {1, 1, 1}));
    EXPECT_EQ(s2.max_pa, 1);
    EXPECT_EQ(s2.witness, (Multiplicity{1, 1, 1}));
    EXPECT_FALSE(s2.all_nonpositive);
    const auto s3 = genus_spectrum(Divisor(disj2(), {1, 1}));
    EXPECT_EQ(s3.max_pa, 0);
    EXPECT_EQ(s3.witness, (Multiplicity{1, 0}));
    EXPECT_TRUE(s3.all_nonpositive);
}

TEST(GenusSpectrum, MatchesOracle) {
    SamplerSpec spec;
    spec.seed = 31;
    spec.n_max = 4;
    spec.mult_max = 3;
    spec.edge_max = 2;
    spec.k_policy = GenusPolicy::rational_or_elliptic;
    for (const auto& inst : sample_random(spec, 200)) {
        const auto s = genus_spectrum(inst.divisor);
        const auto o = oracle::max_subcurve_genus(to_oracle(*inst.config), to_vec(inst.divisor.mult()));
        EXPECT_EQ(s.max_pa, o.max_pa);
        EXPECT_EQ(to_vec(s.witness), o.witness);
        EXPECT_EQ(s.all_nonpositive, o.max_pa <= 0);
        EXPECT_EQ(first_positive_genus_subcurve(*inst.config, inst.divisor.mult()).has_value(), o.max_pa > 0);
    }
}

TEST(PropGo, Examples) {
    EXPECT_EQ(prop_go_check(Divisor(a2(), {1, 1})).status, CheckStatus::pass);
    EXPECT_EQ(prop_go_check(Divisor(disj2(), {1, 1})).status, CheckStatus::pass);
    const auto na = prop_go_check(Divisor(i3(), {1, 1, 1}));
    EXPECT_EQ(na.status, CheckStatus::not_applicable);
    ASSERT_TRUE(na.witness);
    EXPECT_EQ(*na.witness, (Multiplicity{1, 1, 1}));
}

// Small exhaustive run of the same equivalence the acceptance suite covers at full scale.
TEST(PropGo, ExhaustiveSmall) {
    ExhaustiveFamily fam{1, 3, -3, 3, 2, {0}, false};
    std::uint64_t applicable = 0;
    for_each_configuration(fam, [&](const ConfigPtr& cfg) {
        const auto o = to_oracle(*cfg);
        for_each_full_support_divisor(cfg->size(), 2, [&](const Multiplicity& d) {
            const auto r = prop_go_check(*cfg, d);
            const auto v = to_vec(d);
            const bool hyp = oracle::max_subcurve_genus(o, v).max_pa <= 0;
            EXPECT_EQ(r.status == CheckStatus::not_applicable, !hyp);
            if (hyp) {
                ++applicable;
                EXPECT_EQ(oracle::pa(o, v) == 0, oracle::m_connected(o, v, 1));
                EXPECT_EQ(r.status, CheckStatus::pass) << format_mult(d);
            }
            return !HasFailure();
        });
        return !HasFailure();
    });
    EXPECT_GT(applicable, 1000u);
}

TEST(ReducedShadow, H0Examples) {
    EXPECT_EQ(reduced_h0(Divisor(a2(), {1, 1})), 1);
    EXPECT_EQ(reduced_h0(Divisor(star2(), {0, 1, 1})), 2);
    EXPECT_EQ(reduced_h0(Divisor(disj2(), {1, 1})), 2);
    EXPECT_EQ(oracle::components(oracle::a2(), {1, 1}), 1);
    EXPECT_EQ(oracle::components(oracle::star2(), {0, 1, 1}), 2);
    EXPECT_EQ(oracle::components(oracle::disj2(), {1, 1}), 2);
}

TEST(ReducedShadow, H1Examples) {
    EXPECT_EQ(reduced_h1(Divisor(i3(), {1, 1, 1})), 1);
    EXPECT_EQ(reduced_h1(Divisor(a2(), {1, 1})), 0);
    EXPECT_EQ(reduced_h1(Divisor(star2(), {0, 1, 1})), 0);
    EXPECT_EQ(oracle::pa(oracle::star2(), {0, 1, 1}), -1);
}

TEST(ReducedShadow, Preconditions) {
    EXPECT_THROW(reduced_h0(Divisor(a2(), {2, 1})), PreconditionError);
    const auto not_snc = to_library(oracle::a2(), false);
    EXPECT_THROW(reduced_h0(Divisor(not_snc, {1, 1})), PreconditionError);
    EXPECT_THROW(reduced_h1(Divisor(not_snc, {1, 1})), PreconditionError);
}

TEST(ReducedShadow, ComponentsMatchOracle) {
    SamplerSpec spec;
    spec.seed = 32;
    spec.n_max = 7;
    spec.mult_max = 1;
    spec.edge_density = 0.3;
    spec.edge_max = 2;
    for (const auto& inst : sample_random(spec, 300)) {
        const auto o = to_oracle(*inst.config);
        const auto v = to_vec(inst.divisor.mult());
        EXPECT_EQ(reduced_h0(inst.divisor), oracle::components(o, v));
        EXPECT_EQ(reduced_h1(inst.divisor), oracle::components(o, v) - 1 + oracle::pa(o, v));
    }
}

TEST(LemmaB, Examples) {
    const auto r = lemma_b_shadow_check(Divisor(a2(), {1, 1}));
    EXPECT_EQ(r.status, CheckStatus::pass);
    EXPECT_EQ(r.name, "h0_bounded_by_pairing");
    EXPECT_EQ(lemma_b_shadow_check(Divisor(star2(), {1, 1, 1})).status, CheckStatus::pass);
    EXPECT_EQ(lemma_b_shadow_check(Divisor(i3(), {1, 1, 1})).status, CheckStatus::pass);
    // The tight case: h0 of the two disjoint leaves equals their pairing with the core.
    EXPECT_EQ(oracle::components(oracle::star2(), {0, 1, 1}), 2);
    EXPECT_EQ(oracle::pair(oracle::star2(), {0, 1, 1}, {1, 0, 0}), 2);
}

TEST(LemmaB, Preconditions) {
    EXPECT_THROW(lemma_b_shadow_check(Divisor(disj2(), {1, 1})), PreconditionError);
    EXPECT_THROW(lemma_b_shadow_check(Divisor(to_library(oracle::a2(), false), {1, 1})), PreconditionError);
}

TEST(ReducedWitness, Examples) {
    const auto d1 = lemma_dec_reduced_witness(Divisor(disj2(), {1, 1}));
    EXPECT_EQ(d1.a, (Multiplicity{1, 0}));
    EXPECT_EQ(d1.b, (Multiplicity{0, 1}));
    EXPECT_EQ(intersect(*disj2(), d1.a, d1.b), 0);
    const auto d2 = lemma_dec_reduced_witness(Divisor(star2(), {0, 1, 1}));
    EXPECT_EQ(d2.a, (Multiplicity{0, 1, 0}));
    EXPECT_EQ(d2.b, (Multiplicity{0, 0, 1}));
    EXPECT_EQ(intersect(*star2(), d2.a, d2.b), 0);
    EXPECT_THROW(lemma_dec_reduced_witness(Divisor(a2(), {1, 1})), PreconditionError);
}

TEST(ReducedWitness, ComponentsDoNotMeet) {
    SamplerSpec spec;
    spec.seed = 33;
    spec.n_max = 7;
    spec.mult_max = 1;
    spec.edge_density = 0.25;
    for (const auto& inst : sample_random(spec, 300)) {
        if (reduced_h0(inst.divisor) < 2) {
            EXPECT_THROW(lemma_dec_reduced_witness(inst.divisor), PreconditionError);
            continue;
        }
        const auto o = to_oracle(*inst.config);
        const auto w = lemma_dec_reduced_witness(inst.divisor);
        EXPECT_EQ(oracle::plus(to_vec(w.a), to_vec(w.b)), to_vec(inst.divisor.mult()));
        EXPECT_EQ(oracle::components(o, to_vec(w.a)), 1);
        for (std::size_t i = 0; i < w.a.size(); ++i) {
            if (w.a[i] == 0)
                continue;
            oracle::Vec gamma(w.a.size(), 0);
            gamma[i] = 1;
            EXPECT_EQ(oracle::pair(o, gamma, to_vec(w.b)), 0);
        }
    }
}

TEST(Chain, Examples) {
    const auto s = chain_decomposition_search(Divisor(star2(), {1, 1, 1}), Divisor(star2(), {0, 1, 1}));
    ASSERT_TRUE(s);
    EXPECT_EQ(s->pieces, (std::vector<Multiplicity>{{0, 1, 0}, {0, 0, 1}}));
    EXPECT_TRUE(oracle::valid_chain(oracle::star2(), {1, 1, 1}, {0, 1, 1}, chain_vecs(*s)));

    const auto a = chain_decomposition_search(Divisor(a2(), {1, 1}), Divisor(a2(), {1, 0}));
    ASSERT_TRUE(a);
    EXPECT_EQ(a->pieces, (std::vector<Multiplicity>{{1, 0}}));

    EXPECT_FALSE(chain_decomposition_search(Divisor(i3(), {1, 1, 1}), Divisor(i3(), {1, 1, 0})));
}

TEST(Chain, Preconditions) {
    EXPECT_THROW(chain_decomposition_search(Divisor(i3(), {1, 1, 1}), Divisor(i3(), {1, 1, 1})), PreconditionError);
    EXPECT_THROW(chain_decomposition_search(Divisor(disj2(), {1, 1}), Divisor(disj2(), {1, 0})), PreconditionError);
    EXPECT_THROW(chain_decomposition_search(Divisor(i3(), {1, 1, 1}), Divisor(i3(), {2, 0, 0})), PreconditionError);
}

// Every chain the search returns satisfies the invariants when re-checked from scratch, and a
// missing chain is confirmed by brute force over all ordered piece sequences on tiny inputs.
TEST(Chain, ReturnedChainsAreValid) {
    SamplerSpec spec;
    spec.seed = 34;
    spec.n_max = 4;
    spec.mult_max = 2;
    spec.edge_max = 2;
    spec.filter = SampleFilter::one_connected;
    std::uint64_t found = 0;
    for (const auto& inst : sample_random(spec, 150)) {
        const auto o = to_oracle(*inst.config);
        const auto d = to_vec(inst.divisor.mult());
        for (const auto& a : oracle::proper_parts(d)) {
            if (oracle::pair(o, a, oracle::minus(d, a)) < 1)
                continue;
            const Multiplicity ma(a.begin(), a.end());
            const auto chain = chain_decomposition_search(*inst.config, inst.divisor.mult(), ma);
            if (!chain)
                continue;
            ++found;
            EXPECT_TRUE(oracle::valid_chain(o, d, a, chain_vecs(*chain)))
                << format_mult(inst.divisor.mult()) << " " << format_mult(ma);
        }
    }
    EXPECT_GT(found, 50u);
}

TEST(FixedPart, Star2CorePasses) {
    const auto r = fixed_part_report(Divisor(star2(), {1, 1, 1}), Divisor(star2(), {1, 0, 0}));
    for (const auto& c : r.checks)
        EXPECT_EQ(c.status, CheckStatus::pass) << c.name << ": " << c.detail;
    EXPECT_TRUE(r.consistent());
    EXPECT_EQ(r.predicted_h0, 2);
    ASSERT_TRUE(r.observed_h0);
    EXPECT_EQ(*r.observed_h0, 2);
    ASSERT_TRUE(r.chain);
    EXPECT_EQ(r.chain->pieces, (std::vector<Multiplicity>{{0, 1, 0}, {0, 0, 1}}));
    // Reference values.
    EXPECT_EQ(oracle::pair(oracle::star2(), {0, 1, 1}, {1, 0, 0}) + oracle::pa(oracle::star2(), {1, 0, 0}), 2);
    EXPECT_EQ(oracle::components(oracle::star2(), {0, 1, 1}), 2);
}

TEST(FixedPart, A2) {
    const auto r = fixed_part_report(Divisor(a2(), {1, 1}), Divisor(a2(), {1, 0}));
    EXPECT_EQ(find_check(r, check_names::rational).status, CheckStatus::pass);
    EXPECT_EQ(find_check(r, check_names::subcurve_genus).status, CheckStatus::pass);
    EXPECT_EQ(find_check(r, check_names::genus_iff_connected).status, CheckStatus::pass);
    EXPECT_EQ(r.predicted_h0, 1);
    EXPECT_EQ(r.observed_h0, std::optional<Int>(1));
    EXPECT_TRUE(r.consistent());
}

TEST(FixedPart, I3ClauseFourMismatch) {
    EXPECT_THROW(fixed_part_report(Divisor(i3(), {1, 1, 1}), Divisor(i3(), {1, 1, 1})), PreconditionError);
    const auto r = fixed_part_report(Divisor(i3(), {1, 1, 1}), Divisor(i3(), {1, 1, 0}));
    EXPECT_EQ(find_check(r, check_names::subcurve_genus).status, CheckStatus::pass);
    EXPECT_EQ(find_check(r, check_names::genus_iff_connected).status, CheckStatus::pass);
    EXPECT_EQ(find_check(r, check_names::h0_prediction).status, CheckStatus::fail);
    EXPECT_EQ(r.predicted_h0, 2);
    EXPECT_EQ(r.observed_h0, std::optional<Int>(1));
    EXPECT_FALSE(r.consistent());
    EXPECT_EQ(oracle::components(oracle::i3(), {0, 0, 1}), 1);
}

TEST(FixedPart, NotOneConnected) {
    const auto r = fixed_part_report(Divisor(disj2(), {1, 1}), Divisor(disj2(), {1, 0}));
    EXPECT_EQ(find_check(r, check_names::one_connected).status, CheckStatus::fail);
    EXPECT_EQ(find_check(r, check_names::chain).status, CheckStatus::not_applicable);
    EXPECT_FALSE(r.consistent());
}

TEST(FixedPart, StarFamily) {
    const auto s3 = gen_star(3);
    const auto r = fixed_part_report(s3.divisor, s3.divisor.with({1, 0, 0, 0}));
    EXPECT_EQ(r.predicted_h0, 3);
    EXPECT_EQ(r.observed_h0, std::optional<Int>(3));
    EXPECT_TRUE(r.consistent());

    const auto s1 = gen_star(1);
    EXPECT_EQ(connectedness_number(s1.divisor).conn.value(), 1);
    const auto r1 = fixed_part_report(s1.divisor, s1.divisor.with({1, 0}));
    EXPECT_EQ(r1.predicted_h0, 1);
    ASSERT_TRUE(r1.chain);
    EXPECT_EQ(r1.chain->pieces.size(), 1u);
}

TEST(FixedPart, EveryClauseOnceAndDeterministic) {
    SamplerSpec spec;
    spec.seed = 35;
    spec.n_max = 4;
    spec.mult_max = 2;
    spec.k_policy = GenusPolicy::rational_or_elliptic;
    const std::vector<std::string> names{check_names::one_connected,     check_names::rational,
                                         check_names::subcurve_genus,    check_names::genus_iff_connected,
                                         check_names::h0_prediction,     check_names::chain};
    for (const auto& inst : sample_random(spec, 100)) {
        const auto& d = inst.divisor.mult();
        Multiplicity z = d;
        std::size_t top = 0;
        while (z[top] == 0)
            ++top;
        z[top] -= 1;
        if (is_zero(z))
            continue;
        const auto r1 = fixed_part_report(*inst.config, d, z);
        const auto r2 = fixed_part_report(*inst.config, d, z);
        EXPECT_EQ(r1, r2);
        EXPECT_EQ(format_report(r1), format_report(r2));
        std::vector<std::string> got;
        for (const auto& c : r1.checks)
            got.push_back(c.name);
        EXPECT_EQ(got, names);
        if (r1.chain) {
            const auto rest = oracle::minus(to_vec(d), to_vec(z));
            EXPECT_TRUE(oracle::valid_chain(to_oracle(*inst.config), to_vec(d), rest, chain_vecs(*r1.chain)));
        }
    }
}
