#include "hypsob/operator.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

using namespace hypsob;
using hypsob::testing::lit;
using hypsob::testing::n_sym;

namespace {

DimPoly n2() { return n_sym() * n_sym(); }

std::vector<Rational> ints(std::initializer_list<long> v) {
    std::vector<Rational> out;
    for (long x : v) out.emplace_back(x);
    return out;
}

}  // namespace

TEST(StandardOperator, FirstOrder) {
    const OperatorPoly p = standard_operator(1);
    ASSERT_EQ(p.order(), 1);
    EXPECT_EQ(p.coefficient(0), -(n_sym() * (n_sym() - lit(2))) * Rational(1, 4));
    EXPECT_EQ(p.coefficient(1), lit(1));
}

TEST(StandardOperator, SecondOrder) {
    const OperatorPoly p = standard_operator(2);
    EXPECT_EQ(p.coefficient(0), n_sym() * (n_sym() - lit(4)) * (n2() - lit(4)) * Rational(1, 16));
    EXPECT_EQ(p.coefficient(1), -(n2() - n_sym() * 2 - lit(4)) * Rational(1, 2));
    EXPECT_EQ(p.coefficient(2), lit(1));
}

TEST(StandardOperator, SecondOrderAtSixFactors) {
    // (L - 6)(L - 4)
    EXPECT_EQ(instantiate(standard_operator(2), Rational(6)), ints({24, -10, 1}));
}

TEST(Coefficient, ThirdOrderSubleading) {
    EXPECT_EQ(coefficient(standard_operator(3), 2), -(n2() * 3 - n_sym() * 6 - lit(32)) * Rational(1, 4));
}

TEST(Coefficient, FourthOrderSubleading) {
    EXPECT_EQ(coefficient(standard_operator(4), 3), -(n2() - n_sym() * 2 - lit(20)));
}

TEST(Coefficient, MonicForEveryOrder) {
    for (int k = 1; k <= 8; ++k) {
        EXPECT_EQ(coefficient(standard_operator(k), k), lit(1)) << "k=" << k;
        EXPECT_TRUE(standard_operator(k).is_monic());
    }
}

TEST(Coefficient, OutOfRange) {
    EXPECT_THROW(coefficient(standard_operator(3), 4), IndexOutOfRange);
    EXPECT_THROW(coefficient(standard_operator(3), -1), IndexOutOfRange);
}

TEST(BConstant, ThirdOrder) {
    const DimPoly want = n_sym() * (n_sym() - lit(6)) * (n2() - lit(16)) * (n2() - lit(4)) * Rational(1, 64);
    EXPECT_EQ(b_constant(3), want);
}

TEST(BConstant, FirstOrder) { EXPECT_EQ(b_constant(1), n_sym() * (n_sym() - lit(2)) * Rational(1, 4)); }

TEST(BConstant, ThirdOrderAtEight) {
    EXPECT_EQ(b_constant(3)(Rational(8)), Rational(720));
    // equals minus the constant term of (L - 12)(L - 10)(L - 6)
    EXPECT_EQ(instantiate(standard_operator(3), Rational(8)).front(), Rational(-720));
}

TEST(VerifyA0Identity, Orders) {
    EXPECT_TRUE(verify_a0_identity(1));
    EXPECT_TRUE(verify_a0_identity(4));
    EXPECT_TRUE(verify_a0_identity(6));
}

TEST(Instantiate, FirstOrderAtFive) {
    EXPECT_EQ(instantiate(standard_operator(1), Rational(5)), (std::vector<Rational>{Rational(-15, 4), Rational(1)}));
}

TEST(Instantiate, CriticalDimensionKillsConstantTerm) {
    for (int k = 1; k <= 6; ++k) EXPECT_EQ(instantiate(standard_operator(k), Rational(2 * k)).front(), Rational(0));
}

TEST(OperatorPoly, Names) {
    EXPECT_EQ(coefficient_name(3, 2), "a_{32}");
    EXPECT_EQ(coefficient_name(1, 0), "a_{10}");
}

TEST(OperatorPoly, ShiftedFactor) {
    const OperatorPoly f = shifted_first_operator(3);
    EXPECT_EQ(f.coefficient(0), yamabe_shift() + lit(6));
    EXPECT_EQ(yamabe_shift(), -(n_sym() * (n_sym() - lit(2))) * Rational(1, 4));
}
