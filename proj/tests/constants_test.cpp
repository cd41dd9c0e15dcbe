#include "hypsob/constants.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace hypsob;

namespace {
constexpr double pi = std::numbers::pi;
}

TEST(SphereArea, LowDimensions) {
    EXPECT_NEAR(sphere_area(1), 2.0 * pi, 1e-14);
    EXPECT_NEAR(sphere_area(2), 4.0 * pi, 1e-14);
    EXPECT_NEAR(sphere_area(3), 2.0 * pi * pi, 1e-13);
    EXPECT_NEAR(sphere_area(4), 8.0 * pi * pi / 3.0, 1e-13);
    EXPECT_NEAR(sphere_area(4), 26.318945, 1e-6);
    EXPECT_THROW(sphere_area(0), DomainError);
}

TEST(SphereArea, Recurrence) {
    for (int n = 3; n <= 40; ++n) {
        const double want = 2.0 * pi * sphere_area(n - 2) / (n - 1);
        EXPECT_NEAR(sphere_area(n) / want, 1.0, 1e-13) << "n=" << n;
    }
}

TEST(Gamma, HalfIntegersAgreeWithRecursion) {
    for (int m = 1; m <= 60; ++m) {
        const double lanczos = gamma_fn(m / 2.0);
        const double exact = static_cast<double>(gamma_half_integer(m));
        EXPECT_NEAR(lanczos / exact, 1.0, 1e-13) << "m=" << m;
    }
    EXPECT_NEAR(gamma_fn(0.5), std::sqrt(pi), 1e-15);
    EXPECT_NEAR(gamma_fn(5.0), 24.0, 1e-12);
}

TEST(BestConstant, FourDimensionsFirstOrder) {
    EXPECT_NEAR(best_constant(4, 1), 4.0 / (8.0 * std::sqrt(8.0 * pi * pi / 3.0)), 1e-15);
    EXPECT_NEAR(best_constant(4, 1), 0.097462, 1e-6);
}

TEST(BestConstant, SixDimensionsSecondOrder) {
    const double w6 = 16.0 * std::pow(pi, 3) / 15.0;
    EXPECT_NEAR(best_constant(6, 2) / (1.0 / (24.0 * std::pow(w6, 2.0 / 3.0))), 1.0, 1e-14);
    EXPECT_NEAR(best_constant(6, 2), 4.044e-3, 1e-6);
}

TEST(BestConstant, FirstOrderFormulaAgrees) {
    for (int n = 3; n <= 20; ++n) EXPECT_NEAR(best_constant(n, 1) / first_order_constant(n), 1.0, 1e-14);
}

TEST(BestConstant, DimensionChecks) {
    EXPECT_THROW(best_constant(4, 2), DimensionTooSmall);
    EXPECT_THROW(best_constant(5, 0), DomainError);
}

TEST(ConsistencyResidual, Examples) {
    EXPECT_LE(std::abs(consistency_residual(5, 1)), 1e-14);
    EXPECT_LE(std::abs(consistency_residual(9, 3)), 1e-13);
    EXPECT_LE(std::abs(consistency_residual(5, 2)), 1e-13);
}

TEST(ConsistencyResidual, AllSmallDimensions) {
    for (int k = 1; 2 * k < 20; ++k)
        for (int n = 2 * k + 1; n <= 20; ++n) EXPECT_LE(std::abs(consistency_residual(n, k)), 1e-12) << n << "," << k;
}

TEST(GammaIdentity, Range) {
    for (int n = 3; n <= 30; ++n) EXPECT_LE(std::abs(gamma_identity_residual(n)), 1e-12) << "n=" << n;
}

TEST(ConstantsRecord, Fields) {
    const ConstantsRecord r = constants_record(6, 2);
    EXPECT_EQ(r.q, Rational(6));
    EXPECT_EQ(r.b_k, Rational(24));
    EXPECT_GT(r.lambda_k, 0.0);
    EXPECT_GT(r.omega_n, 0.0);
}
