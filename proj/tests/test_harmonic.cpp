#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "turanlab/harmonic.hpp"

using namespace turanlab;

namespace {

GroupFunction random_function(const FiniteAbelianGroup& g, std::mt19937& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    GroupFunction f(g);
    for (std::size_t i = 0; i < g.order(); ++i) f[i] = n(rng);
    return f;
}

FiniteAbelianGroup z2_12() { return make_group(IntVector(12, 2)); }

} // namespace

TEST(Harmonic, DeltaAndConstant) {
    const auto g = make_group({8});
    const auto d = dft(delta(g));
    for (std::size_t t = 0; t < 8; ++t) EXPECT_EQ(d[t], Complex(1, 0));
    GroupFunction one(g, std::vector<double>(8, 1.0));
    const auto c = dft(one);
    EXPECT_NEAR(c[0].real(), 8.0, 1e-12);
    for (std::size_t t = 1; t < 8; ++t) EXPECT_NEAR(std::abs(c[t]), 0.0, 1e-12);
}

// chi_H for H = {e_1..e_12}: each coordinate contributes +1 or -1.
TEST(Harmonic, StandardBasisIndicatorInZ2To12) {
    const auto g = z2_12();
    std::vector<std::size_t> h;
    for (int i = 0; i < 12; ++i) {
        Element e(12, 0);
        e[i] = 1;
        h.push_back(g.index_of(e));
    }
    const auto fhat = dft(indicator(g, h));
    for (std::size_t s = 0; s < g.order(); ++s) {
        const auto sc = g.element(s);
        const auto weight = std::count(sc.begin(), sc.end(), 1);
        EXPECT_EQ(fhat[s].real(), 12.0 - 2.0 * static_cast<double>(weight));
        EXPECT_EQ(fhat[s].imag(), 0.0);
    }
}

TEST(Harmonic, AgreesWithNaiveCharacterSum) {
    std::mt19937 rng(1);
    for (const auto& m : std::vector<IntVector>{{7}, {3, 4}, {2, 5, 3}, {6, 6}, {1, 9}}) {
        const auto g = make_group(m);
        const auto f = random_function(g, rng);
        const auto fast = dft(f);
        const auto slow = oracle::naive_dft(f);
        for (std::size_t t = 0; t < g.order(); ++t) EXPECT_NEAR(std::abs(fast[t] - slow[t]), 0.0, 1e-10);
    }
}

TEST(Harmonic, InverseRoundTripAndParseval) {
    std::mt19937 rng(2);
    const std::vector<IntVector> shapes = {{8}, {5, 7}, {2, 2, 2, 2, 2, 2}, {10, 10, 10}, {3, 4, 5}, {97}, {64, 64}};
    for (const auto& m : shapes) {
        const auto g = make_group(m);
        const auto f = random_function(g, rng);
        const auto fhat = dft(f);
        const auto back = inverse_dft(fhat);
        double num = 0, den = 0, energy = 0, dual_energy = 0;
        for (std::size_t i = 0; i < g.order(); ++i) {
            num += std::pow(back[i] - f[i], 2);
            den += f[i] * f[i];
            energy += f[i] * f[i];
            dual_energy += std::norm(fhat[i]);
        }
        EXPECT_LE(std::sqrt(num / den), 1e-10);
        dual_energy /= static_cast<double>(g.order());
        EXPECT_LE(std::abs(energy - dual_energy) / energy, 1e-9);
    }
}

TEST(Harmonic, EvenFunctionsHaveRealTransform) {
    std::mt19937 rng(3);
    for (const auto& m : std::vector<IntVector>{{9}, {4, 6}, {7, 3, 2}}) {
        const auto g = make_group(m);
        auto f = random_function(g, rng);
        GroupFunction even(g);
        for (std::size_t x = 0; x < g.order(); ++x) even[x] = f[x] + f[g.negate(x)];
        const auto fhat = dft(even);
        for (std::size_t t = 0; t < g.order(); ++t) EXPECT_LE(std::abs(fhat[t].imag()), 1e-9 * even.l1_norm());
    }
}

TEST(Harmonic, ExponentTwoTransformsAreIntegers) {
    std::mt19937 rng(4);
    std::uniform_int_distribution<int> v(-5, 5);
    const auto g = make_group(IntVector(10, 2));
    GroupFunction f(g);
    for (std::size_t i = 0; i < g.order(); ++i) f[i] = v(rng);
    const auto fhat = dft(f);
    for (std::size_t t = 0; t < g.order(); ++t) {
        EXPECT_LE(std::abs(fhat[t].real() - std::round(fhat[t].real())), 1e-12);
        EXPECT_EQ(fhat[t].imag(), 0.0);
    }
}

TEST(Harmonic, Convolution) {
    const auto g = make_group({8});
    const auto c = convolve(delta(g, 3), delta(g, 6));
    EXPECT_EQ(c[1], 1.0);
    EXPECT_EQ(c.sum(), 1.0);

    const std::vector<std::size_t> h = {0, 1, 4, 5}, lambda = {0, 2};
    const auto tiling = convolve(indicator(g, h), indicator(g, lambda));
    for (std::size_t x = 0; x < 8; ++x) EXPECT_EQ(tiling[x], 1.0);

    std::mt19937 rng(5);
    const auto f = random_function(g, rng);
    const auto same = convolve(f, delta(g));
    for (std::size_t x = 0; x < 8; ++x) EXPECT_EQ(same[x], f[x]);

    EXPECT_THROW(convolve(f, delta(make_group({4}))), Error);
}

TEST(Harmonic, ConvolutionTheorem) {
    std::mt19937 rng(6);
    const auto g = make_group({4, 5});
    const auto f = random_function(g, rng), h = random_function(g, rng);
    const auto lhs = dft(convolve(f, h));
    const auto fh = dft(f), hh = dft(h);
    for (std::size_t t = 0; t < g.order(); ++t) EXPECT_NEAR(std::abs(lhs[t] - fh[t] * hh[t]), 0.0, 1e-9);
}

TEST(Harmonic, Autocorrelation) {
    const auto z8 = make_group({8});
    const std::vector<std::size_t> h = {0, 1, 4, 5};
    const auto f = autocorrelation(z8, h);
    EXPECT_EQ(f[0], 4.0);
    EXPECT_EQ(f.sum(), 16.0);
    EXPECT_EQ(f.sum() / f[0], 4.0);

    const auto d = autocorrelation(z8, std::vector<std::size_t>{0});
    EXPECT_EQ(d[0], 1.0);
    EXPECT_EQ(d.sum(), 1.0);

    const auto z4 = make_group({4});
    const auto f4 = autocorrelation(z4, std::vector<std::size_t>{0, 1});
    EXPECT_EQ((std::vector<double>(f4.values().begin(), f4.values().end())), (std::vector<double>{2, 1, 0, 1}));
}

TEST(Harmonic, PositiveDefiniteness) {
    const auto z4 = make_group({4});
    GroupFunction f(z4);
    f[1] = f[3] = 1.0;
    const auto r = is_positive_definite(f, 1e-9);
    EXPECT_FALSE(r.positive_definite);
    EXPECT_NEAR(r.min_real, -2.0, 1e-12);

    const auto d = is_positive_definite(delta(z4), 1e-9);
    EXPECT_TRUE(d.positive_definite);
    EXPECT_EQ(d.min_real, 1.0);

    EXPECT_THROW(is_positive_definite(f, -1.0), Error);
}

TEST(Harmonic, AutocorrelationsAreAlwaysAccepted) {
    std::mt19937 rng(8);
    for (const auto& m : std::vector<IntVector>{{12}, {3, 5}, {2, 2, 2, 2}, {7, 7}}) {
        const auto g = make_group(m);
        std::uniform_int_distribution<std::size_t> pick(0, g.order() - 1);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<std::size_t> h;
            for (int j = 0; j <= trial % 5; ++j) h.push_back(pick(rng));
            std::sort(h.begin(), h.end());
            h.erase(std::unique(h.begin(), h.end()), h.end());
            EXPECT_TRUE(is_positive_definite(autocorrelation(g, h), 1e-9).positive_definite);
        }
    }
}

// Frequency-domain decision vs. the Hermitian kernel matrix definition.
TEST(Harmonic, BochnerAgreesWithKernelMatrixOracle) {
    std::mt19937 rng(9);
    const std::vector<IntVector> shapes = {{4}, {6}, {2, 4}, {3, 3}, {16}, {2, 2, 2, 2}, {5}};
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    int accepted = 0;
    for (int trial = 0; trial < 700; ++trial) {
        const auto g = make_group(shapes[trial % shapes.size()]);
        GroupFunction f(g);
        const bool even = trial % 3 != 0;
        f[0] = 1.0 + std::abs(u(rng)) * 2;
        for (std::size_t x = 1; x < g.order(); ++x) {
            if (even && g.negate(x) < x) continue;
            const double v = 0.6 * u(rng) / std::sqrt(static_cast<double>(g.order()));
            f[x] = v;
            if (even) f[g.negate(x)] = v;
        }
        const bool fast = is_positive_definite(f, 1e-9).positive_definite;
        const bool slow = oracle::brute_force_positive_definite(f, 1e-9);
        EXPECT_EQ(fast, slow) << "trial " << trial;
        accepted += fast;
    }
    EXPECT_GT(accepted, 50);
}
