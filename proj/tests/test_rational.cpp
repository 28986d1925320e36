#include "support.hpp"

#include <gtest/gtest.h>

using namespace thickgeo;
using tg_test::Q;
using tg_test::V;

TEST(Rational, ParsesFractionsIntegersAndDecimals) {
    EXPECT_EQ(parse_rational("3/6"), Rational(1, 2));
    EXPECT_EQ(parse_rational("-7"), Rational(-7));
    EXPECT_EQ(parse_rational("0.125"), Rational(1, 8));
    EXPECT_EQ(parse_rational("-1.5"), Rational(-3, 2));
    EXPECT_EQ(parse_rational(" 2 / 4 "), Rational(1, 2));
}

TEST(Rational, RejectsGarbage) {
    for (const char* bad : {"", "1/0", "abc", "1//2", "1.2.3", "/3", "0x10"}) {
        EXPECT_THROW(parse_rational(bad), InputError) << bad;
    }
}

TEST(Rational, DecimalRoundsHalfToEvenAtTwelveDigits) {
    EXPECT_EQ(to_decimal(Rational(1, 3)), "0.333333333333");
    EXPECT_EQ(to_decimal(Rational(2, 3)), "0.666666666667");
    EXPECT_EQ(to_decimal(Rational(1, 2)), "0.5");
    EXPECT_EQ(to_decimal(Rational(0)), "0");
    // ties at the 13th digit go to the even neighbour
    EXPECT_EQ(to_decimal(Q("1000000000005/1000000000000")), "1");
    EXPECT_EQ(to_decimal(Q("1000000000015/1000000000000")), "1.00000000002");
    EXPECT_EQ(to_decimal(Q("1/10000000")), "1e-7");
}

TEST(Rational, PowIsExact) {
    EXPECT_EQ(pow(Rational(1, 2), 6), Rational(1, 64));
    EXPECT_EQ(pow(Rational(3, 4), 0), Rational(1));
}

TEST(VectorOps, SparseArithmeticMatchesDense) {
    Vector a = V({"1", "0", "2", "0"});
    Vector b = V({"0", "0", "-2", "5"});
    EXPECT_EQ((a + b).dense(), tg_test::Qs({"1", "0", "0", "5"}));
    EXPECT_EQ((a - b).dense(), tg_test::Qs({"1", "0", "4", "-5"}));
    EXPECT_EQ((Rational(1, 2) * a).dense(), tg_test::Qs({"1/2", "0", "1", "0"}));
    EXPECT_EQ((a + b).entries().size(), 2u);
    EXPECT_EQ(a * Rational(0), Vector(4));
}

TEST(VectorOps, DimensionMismatchIsInputError) {
    Vector a(3);
    Vector b(4);
    EXPECT_THROW(a += b, InputError);
    EXPECT_THROW(a.set(3, Rational(1)), InputError);
}
