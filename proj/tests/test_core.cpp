#include <gtest/gtest.h>

#include "support.hpp"

using namespace zonoset;
using namespace zonoset::testing;

TEST(Interval, ArithmeticAndHelpers) {
    const Interval a{-1, 2}, b{3, 4};
    EXPECT_EQ((a + b), (Interval{2, 6}));
    EXPECT_EQ((a - b), (Interval{-5, -1}));
    EXPECT_EQ((a * b), (Interval{-4, 8}));
    EXPECT_EQ(pow(a, 2), (Interval{0, 4}));
    EXPECT_EQ(pow(Interval{-3, -1}, 2), (Interval{1, 9}));
    EXPECT_EQ(pow(a, 3), (Interval{-1, 8}));
    EXPECT_DOUBLE_EQ(a.width(), 3);
    EXPECT_DOUBLE_EQ(a.mid(), 0.5);
    EXPECT_TRUE(a.contains(0));
    EXPECT_THROW(intersect(a, b), std::domain_error);
}

TEST(Interval, TrigonometricRangesAreExact) {
    const Interval s = sin(Interval{-2, 2});
    EXPECT_DOUBLE_EQ(s.lo, -1);
    EXPECT_DOUBLE_EQ(s.hi, 1);
    const Interval c = cos(Interval{-2, 2});
    EXPECT_DOUBLE_EQ(c.lo, std::cos(2.0));
    EXPECT_DOUBLE_EQ(c.hi, 1);
    const Interval narrow = sin(Interval{0.1, 0.2});
    EXPECT_DOUBLE_EQ(narrow.lo, std::sin(0.1));
    EXPECT_DOUBLE_EQ(narrow.hi, std::sin(0.2));
    const Interval e = exp(Interval{0, 1});
    EXPECT_DOUBLE_EQ(e.lo, 1);
    EXPECT_DOUBLE_EQ(e.hi, std::exp(1.0));
}

TEST(Interval, SinCosEncloseSamples) {
    Rng rng(11);
    for (int t = 0; t < 300; ++t) {
        const double lo = uniform(rng, -10, 10), hi = lo + uniform(rng, 0, 7);
        const Interval s = sin(Interval{lo, hi}), c = cos(Interval{lo, hi});
        for (int k = 0; k <= 50; ++k) {
            const double x = lo + (hi - lo) * k / 50.0;
            EXPECT_TRUE(s.lo - 1e-15 <= std::sin(x) && std::sin(x) <= s.hi + 1e-15);
            EXPECT_TRUE(c.lo - 1e-15 <= std::cos(x) && std::cos(x) <= c.hi + 1e-15);
        }
    }
}

TEST(Validate, Example1IsValid) { EXPECT_TRUE(validate(example1()).empty()); }

TEST(Validate, RepeatedIndexGivesOneViolation) {
    ZPolytope P = example1();
    P.exponents[0] = IndexList{1, 1};
    const auto v = validate(P);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("repeats"), std::string::npos);
}

TEST(Validate, IndexOutOfRangeGivesOneViolation) {
    ZPolytope P = example1();
    P.exponents[1] = IndexList{3};
    const auto v = validate(P);
    ASSERT_EQ(v.size(), 1u);
    EXPECT_NE(v[0].find("outside"), std::string::npos);
}

TEST(Validate, ReportsEveryViolation) {
    ZPolytope P = example1();
    P.center.push_back(1);
    P.exponents[0] = IndexList{2, 1};
    P.generators.push_back({1, 1});
    P.exponents.push_back(IndexList{});
    EXPECT_EQ(validate(P).size(), 3u);
}

TEST(ZPolytopeMake, FoldsConstantGenerators) {
    const auto P = ZPolytope::make({1, 1}, {{2, 3}, {1, 0}}, {{}, {1}}, 1);
    EXPECT_EQ(P.center, (Vec{3, 4}));
    EXPECT_EQ(P.num_generators(), 1u);
    EXPECT_THROW(ZPolytope::make({0}, {{1}}, {{2}}, 1), std::invalid_argument);
}

TEST(Evaluate, Example1Corners) {
    const auto P = example1();
    EXPECT_EQ(evaluate(P, Vec{1, 1}), (Vec{0, -2}));
    EXPECT_EQ(evaluate(P, Vec{-1, -1}), (Vec{-2, 3}));
    EXPECT_EQ(evaluate(P, Vec{0, 0}), P.center);
}

TEST(Evaluate, RejectsBadInput) {
    const auto P = example1();
    EXPECT_THROW(evaluate(P, Vec{1}), std::invalid_argument);
    EXPECT_THROW(evaluate(P, Vec{1.5, 0}), std::out_of_range);
    EXPECT_NO_THROW(evaluate(P, Vec{1.5, 0}, true));
}

TEST(EvaluatePz, SingleTermPower) {
    PolyZonotope Q;
    Q.dim = 1;
    Q.num_factors = 2;
    Q.center = {0};
    Q.terms.push_back({{1}, {2, 0}});
    EXPECT_DOUBLE_EQ(evaluate_pz(Q, Vec{0.5, -0.7})[0], 0.25);
    Q.terms.clear();
    Q.center = {4};
    EXPECT_EQ(evaluate_pz(Q, Vec{0.1, 0.2}), (Vec{4}));
}

TEST(LiftToPz, Example1Monomials) {
    const auto Q = lift_to_pz(example1());
    ASSERT_EQ(Q.terms.size(), 3u);
    std::vector<PolyZonotope::Exponent> exps;
    for (const auto& t : Q.terms) exps.push_back(t.exponent);
    std::sort(exps.begin(), exps.end());
    EXPECT_EQ(exps, (std::vector<PolyZonotope::Exponent>{{0, 1}, {1, 0}, {1, 1}}));
}

TEST(LiftToPz, PointHasNoTerms) {
    const auto Q = lift_to_pz(ZPolytope::point({1, 2}));
    EXPECT_TRUE(Q.terms.empty());
    EXPECT_EQ(Q.center, (Vec{1, 2}));
}

TEST(LiftToPz, AgreesWithEvaluate) {
    Rng rng(3);
    for (int t = 0; t < 20; ++t) {
        const auto P = random_zpoly(rng, uniform_int(rng, 1, 3), uniform_int(rng, 1, 5), uniform_int(rng, 0, 8));
        const auto Q = lift_to_pz(P);
        for (int s = 0; s < 50; ++s) {
            const Vec a = random_alpha(rng, P.num_factors);
            const Vec x = evaluate(P, a), y = evaluate_pz(Q, a);
            for (std::size_t d = 0; d < x.size(); ++d) EXPECT_NEAR(x[d], y[d], 1e-12);
        }
    }
}

TEST(Regularize, MergesEqualIndexLists) {
    const auto P = ZPolytope::make({0, 0}, {{1, 2}, {3, -1}}, {{1}, {1}}, 1);
    const auto r = regularize(P);
    ASSERT_EQ(r.set.num_generators(), 1u);
    EXPECT_EQ(r.set.generators[0], (Vec{4, 1}));
    EXPECT_EQ(r.set.exponents[0], (IndexList{1}));
}

TEST(Regularize, RegularInputIsUnchanged) {
    const auto P = example1();
    const auto r = regularize(P);
    EXPECT_EQ(r.set, P);
    EXPECT_EQ(r.factor_map, (std::vector<std::uint32_t>{1, 2}));
}

TEST(Regularize, DropsCancellingPairAndUnusedFactors) {
    const auto P = ZPolytope::make({0, 0}, {{1, 0}, {2, 1}, {-2, -1}}, {{1}, {2, 3}, {2, 3}}, 3);
    const auto r = regularize(P);
    EXPECT_EQ(r.set.num_generators(), P.num_generators() - 2);
    EXPECT_EQ(r.set.num_factors, 1u);
    EXPECT_EQ(r.factor_map, (std::vector<std::uint32_t>{1, 0, 0}));
}

TEST(Regularize, PreservesPointsAndBounds) {
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        const std::size_t p = uniform_int(rng, 1, 6);
        auto P = random_zpoly(rng, 2, p, uniform_int(rng, 1, 40));
        const auto r = regularize(P);
        EXPECT_TRUE(validate(r.set).empty());
        const std::size_t q = r.set.num_factors;
        EXPECT_LE(r.set.num_generators(), (std::size_t{1} << q) - 1);
        EXPECT_LE(r.set.num_indices(), q * (q ? std::size_t{1} << (q - 1) : 0));
        for (int s = 0; s < 100; ++s) {
            const Vec a = random_alpha(rng, p);
            const Vec x = evaluate(P, a), y = evaluate(r.set, r.map_alpha(a));
            for (std::size_t d = 0; d < 2; ++d) EXPECT_NEAR(x[d], y[d], 1e-12 * (1 + std::abs(x[d])));
        }
    }
}

TEST(IntervalHull, Example4Box) {
    const auto box = interval_hull(example4());
    ASSERT_EQ(box.size(), 2u);
    EXPECT_NEAR(box[0].lo, -2, 1e-12);
    EXPECT_NEAR(box[0].hi, 2, 1e-12);
    EXPECT_NEAR(box[1].lo, -2, 1e-12);
    EXPECT_NEAR(box[1].hi, 2, 1e-12);
}

TEST(IntervalHull, PointAndAxisAlignedZonotope) {
    const auto pt = interval_hull(ZPolytope::point({1, -2}));
    EXPECT_EQ(pt[0], Interval{1.0});
    EXPECT_EQ(pt[1], Interval{-2.0});
    const auto Z = ZPolytope::make({1, 2, 3}, {{0.5, 0, 0}, {0, 1, 0}, {0, 0, 2}}, {{1}, {2}, {3}}, 3);
    const auto box = interval_hull(Z);
    EXPECT_EQ(box[0], (Interval{0.5, 1.5}));
    EXPECT_EQ(box[1], (Interval{1, 3}));
    EXPECT_EQ(box[2], (Interval{1, 5}));
}

TEST(IntervalHull, ContainsSamplesAndRespectsCap) {
    Rng rng(8);
    for (int t = 0; t < 30; ++t) {
        const auto P = random_zpoly(rng, 3, uniform_int(rng, 1, 8), uniform_int(rng, 1, 12));
        const auto box = interval_hull(P);
        for (int s = 0; s < 200; ++s) {
            const Vec x = evaluate(P, random_alpha(rng, P.num_factors));
            for (std::size_t d = 0; d < 3; ++d) {
                EXPECT_GE(x[d], box[d].lo - 1e-9);
                EXPECT_LE(x[d], box[d].hi + 1e-9);
            }
        }
    }
    const auto big = random_zpoly(rng, 1, 8, 3);
    EXPECT_THROW(interval_hull(big, 7), cap_exceeded);
}

TEST(SizeStats, Examples) {
    const auto s = size_stats(example1());
    EXPECT_EQ(s, (SizeStats{2, 3, 4, 12}));
    EXPECT_EQ(size_stats(ZPolytope::point({1, 2, 3})), (SizeStats{0, 0, 0, 3}));
    const std::size_t n = 3, m = 5;
    ZPolytope Z;
    Z.dim = n;
    Z.num_factors = m;
    Z.center.assign(n, 0);
    for (std::size_t i = 0; i < m; ++i) {
        Z.generators.push_back(Vec(n, 1.0 + i));
        Z.exponents.push_back(IndexList{static_cast<IndexList::value_type>(i + 1)});
    }
    EXPECT_EQ(size_stats(Z).n_z, n * (m + 1) + m);
}
