#include "support.hpp"

#include <gtest/gtest.h>

using namespace thickgeo;
using tg_test::Q;
using tg_test::V;

namespace {
NormedSpace half_half() { return NormedSpace::weighted_l1({Rational(1, 2), Rational(1, 2)}); }
} // namespace

TEST(NormedSpace, WeightedL1Examples) {
    EXPECT_EQ(exact_norm(half_half(), V({"1", "1"})), 1);
    EXPECT_EQ(exact_norm(half_half(), V({"2", "0"})), 1);
    EXPECT_EQ(exact_norm(half_half(), Vector(2)), 0);
    EXPECT_EQ(exact_norm(half_half(), V({"-3", "1"})), 2);
}

TEST(NormedSpace, ZeroHasZeroNormInEverySpace) {
    EXPECT_EQ(norm(NormedSpace::linf(3), Vector(3)), 0.0);
    EXPECT_EQ(norm(NormedSpace::l2(3), Vector(3)), 0.0);
    EXPECT_EQ(norm(half_half(), Vector(2)), 0.0);
}

TEST(NormedSpace, LinfAndL2) {
    EXPECT_EQ(exact_norm(NormedSpace::linf(3), V({"1/2", "-3", "2"})), 3);
    EXPECT_DOUBLE_EQ(norm(NormedSpace::l2(2), V({"3", "4"})), 5.0);
    EXPECT_THROW(exact_norm(NormedSpace::l2(2), V({"3", "4"})), InputError);
}

TEST(NormedSpace, DistanceIsNormOfDifference) {
    EXPECT_EQ(exact_distance(half_half(), V({"2", "0"}), V({"1", "1"})), 1);
    EXPECT_EQ(exact_distance(NormedSpace::linf(2), V({"2", "0"}), V({"1", "1"})), 1);
}

TEST(NormedSpace, RejectsBadConstruction) {
    EXPECT_THROW(NormedSpace::weighted_l1({Rational(1), Rational(0)}), InputError);
    EXPECT_THROW(NormedSpace::weighted_l1({}), InputError);
    EXPECT_THROW(NormedSpace::linf(0), InputError);
}

TEST(NormedSpace, DimensionMismatchIsInputError) {
    EXPECT_THROW(norm(half_half(), V({"1", "1", "1"})), InputError);
    Functional f{{Rational(1, 2), Rational(1, 2)}};
    EXPECT_THROW(functional_eval(f, V({"1"})), InputError);
}

TEST(Functional, IntegrationFunctionalExamples) {
    Functional f{{Rational(1, 2), Rational(1, 2)}};
    EXPECT_EQ(functional_eval(f, V({"1", "1"})), 1);
    EXPECT_EQ(functional_eval(f, Vector(2)), 0);
    EXPECT_EQ(functional_eval(f, V({"2", "0"})), 1);
}

TEST(Functional, OperatorNorm) {
    // the dual of weighted l1 is weighted linf: max |f_i| / w_i
    Functional f{{Rational(1, 2), Rational(1, 2)}};
    EXPECT_DOUBLE_EQ(operator_norm(half_half(), f), 1.0);
    EXPECT_TRUE(has_unit_operator_norm(half_half(), f));
    Functional g{{Rational(1, 4), Rational(-1, 2)}};
    EXPECT_FALSE(has_unit_operator_norm(NormedSpace::weighted_l1({Rational(1, 8), Rational(1, 2)}), g));
    EXPECT_DOUBLE_EQ(operator_norm(NormedSpace::weighted_l1({Rational(1, 8), Rational(1, 2)}), g), 2.0);
    // dual of linf is l1
    EXPECT_TRUE(has_unit_operator_norm(NormedSpace::linf(2), Functional{{Rational(1, 3), Rational(-2, 3)}}));
    EXPECT_TRUE(has_unit_operator_norm(NormedSpace::l2(2), Functional{{Rational(3, 5), Rational(4, 5)}}));
    EXPECT_FALSE(has_unit_operator_norm(NormedSpace::l2(2), Functional{{Rational(1, 2), Rational(1, 2)}}));
}
