#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "oracles.hpp"
#include "turanlab/compare.hpp"

using namespace turanlab;

// Randomized suites over groups of order at most 64, 1000 cases each.

namespace {

constexpr int kCases = 1000;
constexpr double kTol = 1e-6;

const std::vector<IntVector>& shapes() {
    static const std::vector<IntVector> s = {{5},  {7},    {8},    {9},    {10},      {12},         {13},
                                             {16}, {20},   {24},   {30},   {32},      {64},         {2, 2},
                                             {2, 4}, {3, 3}, {2, 6}, {4, 4}, {2, 8},  {3, 6},       {4, 8},
                                             {5, 5}, {2, 2, 2}, {2, 2, 4}, {2, 2, 2, 2}, {2, 2, 2, 2, 2, 2}, {3, 3, 3}};
    return s;
}

FiniteAbelianGroup random_group(std::mt19937& rng, std::size_t max_order = 64) {
    while (true) {
        const auto g = make_group(shapes()[rng() % shapes().size()]);
        if (g.order() <= max_order) return g;
    }
}

SymmetricDomain random_domain(const FiniteAbelianGroup& g, std::mt19937& rng) {
    std::bernoulli_distribution coin(std::uniform_real_distribution<double>(0.1, 0.7)(rng));
    std::vector<std::size_t> idx{0};
    for (std::size_t x = 1; x < g.order(); ++x)
        if (g.negate(x) >= x && coin(rng)) idx.push_back(x);
    return SymmetricDomain::from_indices(g, idx, true);
}

double lp(const SymmetricDomain& omega) {
    const auto s = turan_constant(omega);
    EXPECT_EQ(s.status, LpStatus::optimal);
    return s.dual_value;
}

Endomorphism random_automorphism(const FiniteAbelianGroup& g, std::mt19937& rng) {
    while (true) {
        std::vector<Element> images;
        for (std::size_t i = 0; i < g.rank(); ++i) images.push_back(g.element(rng() % g.order()));
        try {
            Endomorphism phi(g, images);
            if (phi.bijective()) return phi;
        } catch (const Error&) {
        }
    }
}

GroupFunction random_function(const FiniteAbelianGroup& g, std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    GroupFunction f(g);
    for (std::size_t x = 0; x < g.order(); ++x) f[x] = u(rng);
    return f;
}

} // namespace

TEST(Properties, TrivialBounds) {
    std::mt19937 rng(101);
    for (int i = 0; i < kCases; ++i) {
        const auto omega = random_domain(random_group(rng), rng);
        const double t = lp(omega);
        EXPECT_GE(t, 1 - kTol);
        EXPECT_LE(t, static_cast<double>(omega.size()) + kTol);
    }
}

TEST(Properties, MonotoneInDomain) {
    std::mt19937 rng(102);
    for (int i = 0; i < kCases; ++i) {
        const auto g = random_group(rng);
        const auto small = random_domain(g, rng);
        auto idx = small.elements().indices();
        const auto extra = random_domain(g, rng);
        idx.insert(idx.end(), extra.elements().begin(), extra.elements().end());
        const auto big = SymmetricDomain::from_indices(g, idx);
        EXPECT_LE(lp(small), lp(big) + kTol);
    }
}

TEST(Properties, ProductRule) {
    std::mt19937 rng(103);
    for (int i = 0; i < kCases; ++i) {
        const auto g1 = random_group(rng, 16);
        const auto g2 = random_group(rng, 64 / g1.order());
        const auto a = random_domain(g1, rng);
        const auto b = random_domain(g2, rng);
        EXPECT_NEAR(product_constant(a, b).dual_value, lp(a) * lp(b), kTol);
    }
}

TEST(Properties, AutomorphismInvariance) {
    std::mt19937 rng(104);
    for (int i = 0; i < kCases; ++i) {
        const auto g = random_group(rng);
        const auto omega = random_domain(g, rng);
        const auto phi = random_automorphism(g, rng);
        EXPECT_NEAR(automorphism_image_constant(omega, phi).dual_value, lp(omega), kTol);
    }
}

TEST(Properties, EveryBoundBracketsTheLp) {
    std::mt19937 rng(105);
    CompareOptions opt;
    opt.run_lp = false;
    int upper = 0;
    for (int i = 0; i < kCases; ++i) {
        const auto g = random_group(rng);
        // H - H as the domain makes tiling and spectral bounds applicable
        std::vector<std::size_t> h{0};
        const std::size_t k = 1 + rng() % 4;
        while (h.size() < k) {
            const std::size_t x = rng() % g.order();
            if (std::find(h.begin(), h.end(), x) == h.end()) h.push_back(x);
        }
        const auto omega = i % 2 ? difference_set(g, h) : random_domain(g, rng);
        BoundHints hints;
        if (i % 2) hints.tiles = {h};
        const double t = lp(omega);
        const auto cmp = compare_bounds(omega, hints, opt);
        EXPECT_TRUE(cmp.rejected.empty());
        for (const auto& r : cmp.reports) {
            if (r.direction == BoundDirection::upper) {
                ++upper;
                EXPECT_GE(r.value, t - kTol) << to_string(r.method) << " " << r.note;
            } else {
                EXPECT_LE(r.value, t + kTol) << to_string(r.method) << " " << r.note;
            }
        }
    }
    EXPECT_GT(upper, 4 * kCases);
}

TEST(Properties, ParsevalAndInverseRoundTrip) {
    std::mt19937 rng(106);
    for (int i = 0; i < kCases; ++i) {
        const auto g = random_group(rng);
        const auto f = random_function(g, rng);
        const auto fhat = dft(f);
        const auto back = inverse_dft(fhat);
        double err = 0, energy = 0, dual = 0;
        for (std::size_t x = 0; x < g.order(); ++x) {
            err = std::max(err, std::abs(back[x] - f[x]));
            energy += f[x] * f[x];
            dual += std::norm(fhat[x]);
        }
        EXPECT_LE(err, 1e-12);
        EXPECT_NEAR(dual / static_cast<double>(g.order()), energy, 1e-10 * energy);
        const auto naive = oracle::naive_dft(f);
        for (std::size_t s = 0; s < g.order(); ++s) EXPECT_LE(std::abs(naive[s] - fhat[s]), 1e-9);
    }
}

TEST(Properties, PositiveDefiniteOracleAgrees) {
    std::mt19937 rng(107);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int accepted = 0;
    for (int i = 0; i < kCases; ++i) {
        const auto g = random_group(rng, 16);
        GroupFunction f(g);
        if (i % 2) {
            // autocorrelation of a random function, always positive definite
            const auto a = random_function(g, rng);
            for (std::size_t x = 0; x < g.order(); ++x)
                for (std::size_t y = 0; y < g.order(); ++y) f[g.subtract(x, y)] += a[x] * a[y];
        } else {
            f[0] = 1 + std::abs(u(rng));
            for (std::size_t x = 1; x < g.order(); ++x)
                if (g.negate(x) >= x) f[x] = f[g.negate(x)] = 0.7 * u(rng) / std::sqrt(static_cast<double>(g.order()));
        }
        const bool fast = is_positive_definite(f, 1e-9).positive_definite;
        EXPECT_EQ(fast, oracle::brute_force_positive_definite(f, 1e-9));
        accepted += fast;
    }
    EXPECT_GT(accepted, kCases / 2);
    EXPECT_LT(accepted, kCases);
}
