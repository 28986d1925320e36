#include "support.hpp"

#include <gtest/gtest.h>

using namespace thickgeo;
using tg_test::Q;
using tg_test::V;

namespace {

// Raw bush on (R^2, weights 1/2,1/2): x0 = (1,1) = 3/4 (4/3,0) + 1/4 (0,4).
Bush three_quarter_bush(const Rational& eps) {
    Bush b{NormedSpace::weighted_l1({Rational(1, 2), Rational(1, 2)}), eps, {}, {}, {}, {}};
    b.functional.coefficients = {Rational(1, 2), Rational(1, 2)};
    b.levels = {{V({"1", "1"})}, {V({"4/3", "0"}), V({"0", "4"})}};
    b.partitions = {{}, {{0, 1}}};
    b.weights = {{}, {Rational(3, 4), Rational(1, 4)}};
    return b;
}

} // namespace

TEST(DyadicBush, DepthOneCoordinates) {
    Bush b = dyadic_bush(1);
    EXPECT_EQ(b.root(), V({"1", "1"}));
    EXPECT_EQ(b.vec(1, 0), V({"2", "0"}));
    EXPECT_EQ(b.vec(1, 1), V({"0", "2"}));
    EXPECT_EQ(b.epsilon, 1);
    EXPECT_EQ(exact_distance(b.space, b.vec(1, 0), b.root()), 1);
    EXPECT_EQ(b.functional(b.vec(1, 0)), 1);
}

TEST(DyadicBush, DepthTwoConvexCombination) {
    Bush b = dyadic_bush(2);
    EXPECT_EQ(b.vec(1, 0), V({"2", "2", "0", "0"}));
    EXPECT_EQ(b.vec(2, 0), V({"4", "0", "0", "0"}));
    EXPECT_EQ(Rational(1, 2) * b.vec(2, 0) + Rational(1, 2) * b.vec(2, 1), b.vec(1, 0));
}

TEST(DyadicBush, MatchesIndicatorFormula) {
    const std::size_t N = 5;
    Bush b = dyadic_bush(N);
    for (std::size_t n = 0; n <= N; ++n) {
        ASSERT_EQ(b.level_size(n), std::size_t{1} << n);
        for (std::size_t j = 0; j < b.level_size(n); ++j) {
            auto dense = b.vec(n, j).dense();
            for (std::size_t i = 0; i < dense.size(); ++i) {
                Rational expected = (i >> (N - n)) == j ? Rational(1UL << n) : Rational(0);
                ASSERT_EQ(dense[i], expected) << n << "," << j << "," << i;
            }
        }
    }
}

TEST(DyadicBush, ValidatesWithLambdaHalf) {
    auto r = validate_bush(dyadic_bush(4));
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.lambda_max, Rational(1, 2));
    EXPECT_EQ(r.epsilon, 1);
    EXPECT_TRUE(r.find("lambda_max_bound")->passed);
    EXPECT_EQ(lambda_max(dyadic_bush(3)), Rational(1, 2));
}

TEST(DyadicBush, DepthBudget) {
    EXPECT_THROW(dyadic_bush(5, 4), BudgetError);
    EXPECT_THROW(dyadic_bush(0), InputError);
    EXPECT_NO_THROW(dyadic_bush(12));
}

TEST(ValidateBush, SingletonBlockFails) {
    Bush b{NormedSpace::weighted_l1({Rational(1, 2), Rational(1, 2)}), Rational(1), {}, {}, {}, {}};
    b.functional.coefficients = {Rational(1, 2), Rational(1, 2)};
    b.levels = {{V({"1", "1"})}, {V({"1", "1"})}};
    b.partitions = {{}, {{0}}};
    b.weights = {{}, {Rational(1)}};
    auto r = validate_bush(b);
    EXPECT_FALSE(r.passed());
    EXPECT_FALSE(r.find("separation")->passed);
    EXPECT_FALSE(r.find("blocks_nontrivial")->passed);
    EXPECT_TRUE(r.find("convexity")->passed);
}

TEST(ValidateBush, PerturbedWeightsBreakConvexity) {
    Bush b = dyadic_bush(2);
    b.weights[2][0] = Q("0.6");
    b.weights[2][1] = Q("0.4");
    auto r = validate_bush(b);
    EXPECT_FALSE(r.passed());
    EXPECT_FALSE(r.find("convexity")->passed);
    EXPECT_TRUE(r.find("weights_sum_to_one")->passed);
    // 0.6 (4,0) + 0.4 (0,4) = (2.4, 1.6), not (2, 2)
    Vector combo = Q("0.6") * b.vec(2, 0) + Q("0.4") * b.vec(2, 1);
    EXPECT_NE(combo, b.vec(1, 0));
}

TEST(ValidateBush, MalformedPartitionsNameIndices) {
    Bush b = dyadic_bush(2);
    b.partitions[2] = {{0, 1}, {1, 2}};
    try {
        validate_bush(b);
        FAIL() << "expected StructuralError";
    } catch (const StructuralError& e) {
        std::string msg = e.what();
        EXPECT_NE(msg.find("overlapping indices {1}"), std::string::npos) << msg;
        EXPECT_NE(msg.find("uncovered indices {3}"), std::string::npos) << msg;
    }
}

TEST(ValidateBush, LambdaMaxBoundThreeQuarters) {
    auto ok = validate_bush(three_quarter_bush(Rational(1, 2)), 0.0, BushMode::raw);
    EXPECT_EQ(ok.lambda_max, Rational(3, 4));
    EXPECT_TRUE(ok.find("lambda_max_bound")->passed);
    EXPECT_TRUE(ok.passed());

    // separation is 2/3, so ε = 2/3 is a valid raw bush whose λ_max exceeds 1 - ε/2
    auto tight = validate_bush(three_quarter_bush(Rational(2, 3)), 0.0, BushMode::raw);
    EXPECT_TRUE(tight.find("separation")->passed);
    EXPECT_FALSE(tight.find("lambda_max_bound")->passed);
    EXPECT_TRUE(tight.find("lambda_max_bound")->warning_only);
    EXPECT_TRUE(tight.passed());
    EXPECT_EQ(tight.warnings().size(), 1u);

    // not normalized: ||x_{1,0}|| = 2/3
    EXPECT_FALSE(validate_bush(three_quarter_bush(Rational(1, 2))).passed());
}

TEST(LambdaMax, EqualThirds) {
    Bush b{NormedSpace::linf(3), Rational(1), {}, {}, {}, {}};
    b.functional.coefficients = {Rational(1), Rational(0), Rational(0)};
    b.levels = {{V({"1", "0", "0"})}, {V({"1", "2", "0"}), V({"1", "-1", "3/2"}), V({"1", "-1", "-3/2"})}};
    b.partitions = {{}, {{0, 1, 2}}};
    b.weights = {{}, {Rational(1, 3), Rational(1, 3), Rational(1, 3)}};
    EXPECT_EQ(lambda_max(b), Rational(1, 3));
    EXPECT_TRUE(validate_bush(b, 0.0, BushMode::raw).passed());
}

TEST(RademacherBush, ValidNormalized) {
    auto r = validate_bush(rademacher_bush(5));
    EXPECT_TRUE(r.passed());
    EXPECT_EQ(r.lambda_max, Rational(1, 2));
}

TEST(SplitBush, RandomBushesAreValidAndRespectLambdaBound) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        Bush b = split_bush(SplitBushOptions{3, 3, 0, seed});
        auto r = validate_bush(b);
        ASSERT_TRUE(r.passed()) << "seed " << seed;
        Rational lm = 0;
        for (std::size_t n = 1; n <= b.depth(); ++n) {
            for (const auto& w : b.weights[n]) lm = std::max(lm, w);
        }
        EXPECT_LE(lm, 1 - b.epsilon / 2) << "seed " << seed;
    }
}

TEST(SplitBush, DeterministicPerSeed) {
    EXPECT_EQ(split_bush(SplitBushOptions{3, 3, 0, 42}), split_bush(SplitBushOptions{3, 3, 0, 42}));
}

TEST(ShiftBush, TranslationExamples) {
    Bush b = dyadic_bush(1);
    EXPECT_EQ(shift_bush(b, Vector(2)), b);
    Bush s = shift_bush(b, V({"1", "1"}));
    EXPECT_EQ(s.root(), V({"2", "2"}));
    EXPECT_EQ(exact_distance(s.space, s.vec(1, 0), s.root()), 1);
    EXPECT_TRUE(validate_bush(s, 0.0, BushMode::raw).passed());
    EXPECT_EQ(shift_bush(s, V({"-1", "-1"})), b);
}

TEST(Midpoint, Examples) {
    auto m = midpoint_y(dyadic_bush(1), 0, 0, 0);
    EXPECT_EQ(m.value, V({"3/2", "1/2"}));
    EXPECT_EQ(m.norm, 1);
    EXPECT_EQ(m.distance_to_parent, Rational(1, 2));

    auto m2 = midpoint_y(dyadic_bush(2), 1, 0, 1);
    EXPECT_EQ(m2.value, V({"1", "3", "0", "0"}));
    EXPECT_EQ(m2.norm, 1);
}

TEST(Midpoint, ChildOutsideBlockIsIndexError) {
    Bush b = dyadic_bush(2);
    EXPECT_THROW(midpoint_y(b, 1, 0, 2), IndexError);
    EXPECT_THROW(midpoint_y(b, 2, 0, 0), IndexError);
}
