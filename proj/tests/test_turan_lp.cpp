#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "turanlab/turan_lp.hpp"

using namespace turanlab;

namespace {

SymmetricDomain cyclic_domain(std::int64_t n, std::initializer_list<std::int64_t> xs) {
    std::vector<Element> e;
    for (auto x : xs) e.push_back({x});
    return symmetric_domain(make_group({n}), e);
}

SymmetricDomain z8_domain() { return cyclic_domain(8, {0, 1, 3, 4, 5, 7}); }

void expect_healthy(const LpSolution& s) {
    EXPECT_EQ(s.status, LpStatus::optimal);
    EXPECT_LE(s.gap, 1e-7 * std::max(1.0, s.value));
    EXPECT_GE(s.min_transform, -1e-7);
    EXPECT_EQ(s.primal[0], 1.0);
}

SymmetricDomain random_domain(const FiniteAbelianGroup& g, std::mt19937& rng, double p) {
    std::bernoulli_distribution coin(p);
    std::vector<std::size_t> idx{0};
    for (std::size_t x = 1; x < g.order(); ++x)
        if (g.negate(x) >= x && coin(rng)) idx.push_back(x);
    return SymmetricDomain::from_indices(g, idx, true);
}

} // namespace

TEST(TuranLp, Z8DomainWithTilingPair) {
    const auto s = turan_constant(z8_domain());
    expect_healthy(s);
    EXPECT_NEAR(s.value, 4.0, 1e-7);
    EXPECT_NEAR(s.dual_value, 4.0, 1e-7);
}

TEST(TuranLp, TrivialDomains) {
    for (const auto& m : std::vector<IntVector>{{8}, {3, 4}, {2, 2, 2}}) {
        const auto g = make_group(m);
        const auto zero = turan_constant(SymmetricDomain::from_indices(g, {0}));
        EXPECT_EQ(zero.value, 1.0);
        EXPECT_EQ(zero.pivots, 0u);
        std::vector<std::size_t> all(g.order());
        std::iota(all.begin(), all.end(), 0);
        const auto full = turan_constant(SymmetricDomain::from_indices(g, all));
        expect_healthy(full);
        EXPECT_NEAR(full.value, static_cast<double>(g.order()), 1e-7);
    }
}

// Z_10 with Omega = {0} u odd residues: subgroup bound gives 2 and chi_{0,5} attains it.
TEST(TuranLp, OddResiduesOfEvenCycle) {
    const auto s = turan_constant(cyclic_domain(10, {0, 1, 3, 5, 7, 9}));
    expect_healthy(s);
    EXPECT_NEAR(s.value, 2.0, 1e-7);
    const auto g = make_group({10});
    GroupFunction w = indicator(g, std::vector<std::size_t>{0, 5});
    EXPECT_DOUBLE_EQ(witness_ratio(w, cyclic_domain(10, {0, 1, 3, 5, 7, 9})).value, 2.0);
}

TEST(TuranLp, ExactModeOnElementaryAbelianGroup) {
    const auto g = make_group({2, 2});
    const auto omega = SymmetricDomain::from_indices(g, {0, 1, 2, 3});
    const auto s = turan_constant(omega, {SolveMode::exact_rational, {}, {}});
    ASSERT_TRUE(s.exact_value.has_value());
    EXPECT_EQ(*s.exact_value, Rational(4));
    EXPECT_EQ(s.gap, 0.0);
    EXPECT_THROW(turan_constant(z8_domain(), {SolveMode::exact_rational, {}, {}}), Error);
}

TEST(TuranLp, ExactMatchesFloatOnZ2k) {
    std::mt19937 rng(17);
    for (int k = 2; k <= 6; ++k) {
        const auto g = make_group(IntVector(k, 2));
        for (int trial = 0; trial < 10; ++trial) {
            const auto omega = random_domain(g, rng, 0.3);
            const auto f = turan_constant(omega);
            const auto q = turan_constant(omega, {SolveMode::exact_rational, {}, {}});
            expect_healthy(f);
            ASSERT_TRUE(q.exact_value);
            EXPECT_NEAR(f.value, to_double(*q.exact_value), 1e-9);
            EXPECT_EQ(q.gap, 0.0);
        }
    }
}

TEST(TuranLp, BudgetCap) {
    LpOptions opt;
    opt.limits.group_order_cap = 16;
    const auto g = make_group({32});
    const auto s = turan_constant(SymmetricDomain::from_indices(g, {1}, true), opt);
    EXPECT_EQ(s.status, LpStatus::budget_exceeded);
    EXPECT_EQ(s.value, 1.0);
}

TEST(TuranLp, ProblemShape) {
    const auto p = build_lp(z8_domain());
    EXPECT_EQ(p.num_variables(), 3u); // {1,7}, {3,5}, {4}
    EXPECT_EQ(p.character_classes, 5u);
    EXPECT_LE(p.num_rows(), 8u);
    std::size_t covered = 0;
    for (const auto& r : p.row_characters) covered += r.size();
    EXPECT_EQ(covered, p.character_classes);
}

TEST(TuranLp, WitnessRatio) {
    const auto g = make_group({8});
    const auto w = witness_ratio(autocorrelation(g, std::vector<std::size_t>{0, 1, 4, 5}), z8_domain());
    EXPECT_EQ(w.direction, BoundDirection::lower);
    EXPECT_DOUBLE_EQ(w.value, 4.0);
    EXPECT_DOUBLE_EQ(witness_ratio(delta(g), z8_domain()).value, 1.0);

    const auto k = subgroup_generated(g, {{2}});
    const auto omega_k = SymmetricDomain::from_indices(g, k.elements().indices());
    EXPECT_DOUBLE_EQ(witness_ratio(indicator(g, k.elements().indices()), omega_k).value, 4.0);

    try { // leaks onto 2
        witness_ratio(autocorrelation(g, std::vector<std::size_t>{0, 2}), z8_domain());
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::witness_rejected);
    }
    GroupFunction bad(g);
    bad[0] = 1;
    bad[4] = -2;
    EXPECT_THROW(witness_ratio(bad, z8_domain()), Error);
}

TEST(TuranLp, SubgroupBound) {
    for (std::int64_t n : {3, 4, 5, 6}) {
        const auto g = make_group({2 * n});
        std::vector<Element> omega{{0}};
        for (std::int64_t x = 1; x < 2 * n; x += 2) omega.push_back({x});
        const auto dom = symmetric_domain(g, omega);
        const auto k = subgroup_generated(g, {{2}});
        EXPECT_NEAR(subgroup_bound(dom, k).value, 2.0, 1e-7);
        EXPECT_EQ(dom.size(), static_cast<std::size_t>(n + 1));
    }
    const auto dom = z8_domain();
    const auto& g = dom.group();
    EXPECT_NEAR(subgroup_bound(dom, subgroup_generated(g, {{1}})).value, 4.0, 1e-7);
    EXPECT_NEAR(subgroup_bound(dom, subgroup_generated(g, {})).value, 8.0, 1e-7);
}

TEST(TuranLp, QuotientBound) {
    const auto g = make_group({8});
    const auto dom = cyclic_domain(8, {0, 1, 7});
    const auto k = Subgroup::from_elements(g, {{0}, {4}});
    const auto q = quotient_bound(dom, k);
    EXPECT_NEAR(q.value, 2.0, 1e-7);
    EXPECT_EQ(q.certificate["quotient_moduli"], IntVector{4});

    EXPECT_NEAR(quotient_bound(dom, subgroup_generated(g, {})).value, turan_constant(dom).value, 1e-7);

    const auto g2 = make_group({4, 2});
    const auto dom2 = symmetric_domain(g2, {{0, 0}, {1, 0}, {3, 0}});
    EXPECT_NEAR(quotient_bound(dom2, subgroup_generated(g2, {{0, 1}})).value, 2.0, 1e-7);
}

TEST(TuranLp, AutomorphismImage) {
    const auto dom = z8_domain();
    const auto& g = dom.group();
    const auto s = automorphism_image_constant(dom, Endomorphism(g, {{3}}));
    EXPECT_NEAR(s.value, 4.0, 1e-7);
    const auto id = automorphism_image_constant(dom, Endomorphism(g, {{1}}));
    EXPECT_EQ(id.value, turan_constant(dom).value);
    EXPECT_THROW(automorphism_image_constant(dom, Endomorphism(g, {{2}})), Error);
}

TEST(TuranLp, AutomorphismOfZ2To12ByCoordinatePermutation) {
    const auto g = make_group(IntVector(12, 2));
    std::vector<Element> h, images;
    for (int i = 0; i < 12; ++i) {
        Element e(12, 0);
        e[i] = 1;
        h.push_back(e);
        Element img(12, 0);
        img[(5 * i + 3) % 12] = 1;
        images.push_back(img);
    }
    const auto omega = difference_set(g, h);
    const Endomorphism perm(g, images);
    ASSERT_TRUE(perm.bijective());
    const auto mapped = image_domain(omega, perm);
    EXPECT_EQ(mapped.elements(), omega.elements());
    EXPECT_NEAR(automorphism_image_constant(omega, perm).value, turan_constant(omega).value, 1e-7);
}

TEST(TuranLp, ProductRule) {
    const auto a = z8_domain();
    const auto b = cyclic_domain(4, {0, 1, 3});
    const auto p = product_constant(a, b);
    expect_healthy(p);
    EXPECT_NEAR(p.value, 8.0, 1e-6);
    EXPECT_NEAR(product_constant(a, cyclic_domain(4, {0})).value, 4.0, 1e-6);
    const auto g1 = make_group({3}), g2 = make_group({4});
    const auto full = product_constant(SymmetricDomain::from_indices(g1, {0, 1, 2}),
                                       SymmetricDomain::from_indices(g2, {0, 1, 2, 3}));
    EXPECT_NEAR(full.value, 12.0, 1e-6);
}

// LP value against vertex enumeration on all small domains with <= 3 classes.
TEST(TuranLp, VertexEnumerationOracle) {
    int checked = 0;
    for (std::int64_t n = 2; n <= 12; ++n) {
        const auto g = make_group({n});
        std::vector<std::size_t> reps;
        for (std::size_t x = 1; x < g.order(); ++x)
            if (g.negate(x) >= x) reps.push_back(x);
        for (std::uint32_t mask = 0; mask < (1u << reps.size()); ++mask) {
            if (std::popcount(mask) > 3) continue;
            std::vector<std::size_t> idx{0};
            for (std::size_t j = 0; j < reps.size(); ++j)
                if (mask >> j & 1u) idx.push_back(reps[j]);
            const auto dom = SymmetricDomain::from_indices(g, idx, true);
            const auto s = turan_constant(dom);
            expect_healthy(s);
            EXPECT_NEAR(s.value, oracle::vertex_enumeration_turan(dom), 1e-6) << "n=" << n << " mask=" << mask;
            ++checked;
        }
    }
    for (const auto& m : std::vector<IntVector>{{2, 2}, {2, 4}, {3, 3}, {2, 6}, {2, 2, 3}}) {
        std::mt19937 rng(99);
        const auto g = make_group(m);
        for (int t = 0; t < 20; ++t) {
            auto dom = random_domain(g, rng, 0.35);
            if (build_lp(dom).num_variables() > 3) continue;
            EXPECT_NEAR(turan_constant(dom).value, oracle::vertex_enumeration_turan(dom), 1e-6);
            ++checked;
        }
    }
    EXPECT_GT(checked, 200);
}

TEST(TuranLp, Z2To12Instance) {
    const auto g = make_group(IntVector(12, 2));
    std::vector<Element> h;
    for (int i = 0; i < 12; ++i) {
        Element e(12, 0);
        e[i] = 1;
        h.push_back(e);
    }
    const auto p = build_lp(difference_set(g, h));
    EXPECT_EQ(p.num_variables(), 66u);
    EXPECT_EQ(p.character_classes, 4096u);
    EXPECT_LE(p.num_rows(), 4096u);
    const auto s = solve_lp(p);
    expect_healthy(s);
    EXPECT_NEAR(s.value, 12.0, 1e-6);
}
