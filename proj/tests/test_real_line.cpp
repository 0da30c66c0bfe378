#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "turanlab/real_line.hpp"

using namespace turanlab;

namespace {

// Trapezoid rule on a grid that contains every kink of a piecewise linear
// function, hence exact.
Rational exact_integral(const TentTrain& t, const Rational& lo, const Rational& hi, long long steps) {
    const Rational h = (hi - lo) / steps;
    Rational sum = 0;
    for (long long k = 0; k < steps; ++k) sum += (t.at(lo + h * k) + t.at(lo + h * (k + 1))) / 2 * h;
    return sum;
}

double quadrature_transform(const TentTrain& t, double xi, double lo, double hi, int steps) {
    const double h = (hi - lo) / steps;
    double s = 0;
    for (int k = 0; k <= steps; ++k) {
        const double x = lo + h * k;
        const double w = (k == 0 || k == steps) ? 0.5 : 1.0;
        s += w * t.at(Rational(static_cast<long long>(std::llround(x * 1000)), 1000)).convert_to<double>() * std::cos(xi * x);
    }
    return s * h;
}

} // namespace

TEST(IntervalUnion, Validation) {
    EXPECT_THROW(IntervalUnion::domain({{-1, 2}}), Error);
    EXPECT_THROW(IntervalUnion::domain({{1, 2}, {-2, -1}}), Error); // no neighbourhood of 0
    EXPECT_THROW(IntervalUnion::from_intervals({{0, 2}, {1, 3}}), Error);
    EXPECT_THROW(IntervalUnion::from_intervals({{1, 1}}), Error);
    try {
        IntervalUnion::domain({{-1, 1}, {1, 2}});
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::domain_not_symmetric);
    }
    EXPECT_THROW(IntervalUnion::punctured(1, 2), Error);
}

TEST(IntervalUnion, MeasureAndCoverage) {
    const auto o = IntervalUnion::punctured(Rational(3, 2), 1);
    EXPECT_EQ(o.measure(), 3);
    EXPECT_EQ(o.sup(), Rational(3, 2));
    EXPECT_TRUE(o.contains(0));
    EXPECT_FALSE(o.contains(1));
    EXPECT_FALSE(o.contains(Rational(3, 2)));
    EXPECT_FALSE(o.uncovered({Rational(-1, 2), Rational(1, 2)}));
    const auto gap = o.uncovered({Rational(1, 2), Rational(5, 4)});
    ASSERT_TRUE(gap);
    EXPECT_EQ(gap->first, 1);
    EXPECT_EQ(gap->second, 1);
    const auto tail = o.uncovered({0, 2});
    ASSERT_TRUE(tail);
    EXPECT_EQ(tail->first, 1); // the puncture comes first
    EXPECT_FALSE(o.uncovered({Rational(11, 10), Rational(3, 2)}));
    EXPECT_EQ(o.uncovered({Rational(11, 10), 2})->first, Rational(3, 2));
}

TEST(RealLine, HalvingAndLatticeCertificates) {
    const auto o = IntervalUnion::punctured(Rational(3, 2), 1);
    EXPECT_EQ(*halving_bound(o).exact, Rational(3, 2));
    EXPECT_EQ(*lattice_certificate(o, 1).exact, 1);
    try {
        lattice_certificate(o, Rational(1, 2));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::certificate_invalid);
    }
    EXPECT_THROW(lattice_certificate(o, 0), Error);
    const auto wide = IntervalUnion::punctured(3, 1);
    EXPECT_EQ(*lattice_certificate(wide, 3).exact, 3);
    EXPECT_THROW(lattice_certificate(wide, 1), Error); // 2 lies in (1, 3)
    EXPECT_EQ(*lattice_certificate(IntervalUnion::domain({{-2, 2}}), 2).exact, 2);
}

TEST(TentTrain, ValuesAndIntegral) {
    EXPECT_EQ(tent(2, Rational(1, 2)), Rational(3, 2));
    EXPECT_EQ(tent(2, -3), 0);
    std::mt19937 rng(9);
    for (int rep = 0; rep < 40; ++rep) {
        const Rational c(1 + static_cast<long long>(rng() % 4), 2);
        std::vector<Rational> d;
        const int k = 1 + static_cast<int>(rng() % 4);
        for (int i = 0; i < k; ++i) d.push_back(Rational(static_cast<long long>(rng() % 13) - 6, 2));
        const auto t = tent_train(c, d);
        // every kink is a multiple of 1/2
        EXPECT_EQ(t.integral(), exact_integral(t, -20, 20, 80 * 2));
        EXPECT_EQ(t.value_at_zero(), t.at(0));
        const auto supp = t.support();
        for (const auto& p : supp.parts()) {
            EXPECT_EQ(t.at(p.lo), 0);
            EXPECT_EQ(t.at(p.hi), 0);
            EXPECT_GT(t.at((p.lo + p.hi) / 2), 0);
        }
    }
    EXPECT_THROW(tent_train(0, {Rational(0)}), Error);
    EXPECT_THROW(tent_train(1, {}), Error);
}

TEST(TentTrain, TransformMatchesQuadratureAndIsNonnegative) {
    const auto t = tent_train(1, {Rational(0), Rational(2)});
    for (double xi : {0.0, 0.3, 1.0, 2.5, 7.0}) EXPECT_NEAR(t.transform(xi), quadrature_transform(t, xi, -4, 4, 8000), 1e-4);
    EXPECT_GE(t.sampled_transform_min(), -1e-12);
    EXPECT_NEAR(t.transform(0), t.integral().convert_to<double>(), 1e-12);
}

TEST(RealLine, PuncturedCertificateIsSharp) {
    const Rational a(3, 2), b(1);
    const auto o = IntervalUnion::punctured(a, b);
    for (const auto& eps : {Rational(1, 10), Rational(1, 100), Rational(1, 1000)}) {
        const auto lo = witness_in_domain(tent_train(b - eps, {Rational(0)}), o);
        EXPECT_EQ(*lo.exact, b - eps);
        EXPECT_LE(*lo.exact, *lattice_certificate(o, b).exact);
    }
    try {
        witness_in_domain(tent_train(Rational(11, 10), {Rational(0)}), o);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::witness_rejected);
    }
}

TEST(RealLine, SharpnessTrainBeatsB) {
    for (const auto& [a, b] : {std::pair{Rational(3), Rational(1)}, std::pair{Rational(5), Rational(2)},
                               std::pair{Rational(7, 2), Rational(1, 2)}}) {
        const auto o = IntervalUnion::punctured(a, b);
        const auto t = sharpness_train(a, b);
        const auto lo = witness_in_domain(t, o);
        EXPECT_GT(*lo.exact, b);
        EXPECT_EQ(t.value_at_zero(), 2 * t.c);
        EXPECT_GE(t.sampled_transform_min(), -1e-12);
        EXPECT_LE(*lo.exact, *halving_bound(o).exact);
    }
    EXPECT_EQ(*witness_in_domain(sharpness_train(3, 1), IntervalUnion::punctured(3, 1)).exact, 2);
}
