#include "hypsob/numeric_lab.hpp"
#include "support.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace hypsob;

namespace {

constexpr double pi = std::numbers::pi;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(Quadrature, Polynomial) {
    const QuadratureResult r = integrate([](double x) { return x * x; }, 0.0, 1.0);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR(r.value, 1.0 / 3.0, 1e-15);
    EXPECT_GE(r.error_estimate, 0.0);
}

TEST(Quadrature, IntegrableEndpointSingularity) {
    QuadratureOptions opt;
    opt.rel_tol = 1e-10;
    const QuadratureResult r = integrate([](double x) { return x > 0 ? 1.0 / std::sqrt(x) : 0.0; }, 0.0, 1.0, opt);
    EXPECT_TRUE(r.converged);
    EXPECT_FALSE(r.divergent);
    EXPECT_NEAR(r.endpoint_exponents.first, -0.5, 1e-6);
    EXPECT_NEAR(r.value, 2.0, 1e-8);
    EXPECT_LE(r.error_estimate, opt.rel_tol * std::max(1.0, std::abs(r.value)));
}

TEST(Quadrature, DivergentEndpointIsFlagged) {
    const QuadratureResult r = integrate([](double x) { return 1.0 / (1.0 - x); }, 0.0, 1.0);
    EXPECT_TRUE(r.divergent);
    EXPECT_FALSE(r.converged);
    EXPECT_NEAR(r.endpoint_exponents.second, -1.0, 1e-6);
    EXPECT_THROW(integrate_or_throw([](double x) { return 1.0 / (1.0 - x); }, {0.0, 1.0}), ToleranceNotMet);
}

TEST(ExtremalParams, Validation) {
    EXPECT_THROW(make_params(4, 2, 0.5), DimensionTooSmall);
    EXPECT_THROW(make_params(5, 1, 1.0), DomainError);
    EXPECT_THROW(make_params(5, 1, -0.1), DomainError);
    EXPECT_NO_THROW(make_params(5, 1, kMaxBeta));
}

TEST(UBeta, Values) {
    for (int n : {3, 7, 10}) EXPECT_DOUBLE_EQ(u_beta_value(make_params(n, 1, 0.0), 0.0), 1.0);
    const ExtremalParams p = make_params(9, 2, 0.6);
    EXPECT_NEAR(u_beta_value(p, 0.0), std::pow(1.6 / 0.4, (9 - 4) / 4.0), 1e-13);
    EXPECT_NEAR(u_beta_value(make_params(4, 1, 0.0), std::log(3.0)), 0.6, 1e-15);
}

TEST(LiftResidual, Examples) {
    const ExtremalParams p = make_params(5, 1, 0.4);
    EXPECT_LE(lift_residual(p, 0.5), 1e-14);
    EXPECT_LE(lift_residual(p, 0.0), 1e-15);
    EXPECT_LE(lift_residual(make_params(6, 2, 0.9), 0.99), 1e-10);
}

TEST(IntegralUq, ThreeDimensionsClosedForm) {
    const QuadratureResult r = integral_uq(make_params(3, 1, 0.0));
    EXPECT_LE(rel(r.value, pi * pi), 1e-10);
}

TEST(IntegralUq, PolarRouteAgrees) {
    for (double beta : {0.0, 0.3, 0.8}) {
        const ExtremalParams p = make_params(6, 2, beta);
        EXPECT_LE(rel(integral_uq_polar(p).value, integral_uq(p).value), 1e-9) << beta;
    }
}

TEST(IntegralUq, LimitIsSphereArea) {
    const ExtremalParams p = make_params(5, 1, 1.0 - 1e-6);
    EXPECT_LE(rel(integral_uq(p).value, sphere_area(5)), 1e-6);
}

TEST(IntegralUq, IncreasingAndBounded) {
    double prev = 0.0;
    for (double beta : {0.0, 0.5, 0.9, 0.99, 0.999}) {
        const double v = integral_uq(make_params(9, 3, beta)).value;
        EXPECT_GT(v, prev);
        EXPECT_LT(v, sphere_area(9));
        prev = v;
    }
}

TEST(HyperbolicQuotient, ThreeDimensions) {
    const QuotientReport r = hyperbolic_quotient(make_params(3, 1, 0.0));
    EXPECT_NEAR(r.quotient, 0.75 * std::pow(pi * pi, 2.0 / 3.0), 1e-9);
    EXPECT_NEAR(r.quotient, 3.4508, 1e-4);
    EXPECT_NEAR(r.sharp_value, 0.75 * std::pow(2.0 * pi * pi, 2.0 / 3.0), 1e-12);
    EXPECT_NEAR(r.sharp_value, 5.4776, 1e-3);
    EXPECT_NEAR(r.quotient / r.sharp_value, std::pow(0.5, 2.0 / 3.0), 1e-10);
}

TEST(HyperbolicQuotient, AlgebraicRestatement) {
    for (double beta : {0.2, 0.7, 0.95}) {
        const ExtremalParams p = make_params(8, 2, beta);
        const QuotientReport r = hyperbolic_quotient(p);
        const double e = 4.0 / 8.0;
        EXPECT_NEAR(r.quotient / r.sharp_value, std::pow(r.integral_uq / sphere_area(8), e), 1e-12);
        EXPECT_NEAR(r.quotient / (b_constant_value(8, 2) * std::pow(r.integral_uq, e)), 1.0, 1e-12);
        EXPECT_GT(r.gap, 0.0);
        EXPECT_GT(r.integral_uq, 0.0);
    }
}

TEST(QuotientCurve, FiveDimensionsMonotone) {
    const auto reps = quotient_curve(5, 1, {0.5, 0.9, 0.99, 0.999});
    ASSERT_EQ(reps.size(), 4u);
    for (std::size_t i = 1; i < reps.size(); ++i) {
        EXPECT_GT(reps[i].quotient, reps[i - 1].quotient);
        EXPECT_LT(reps[i].gap, reps[i - 1].gap);
        EXPECT_EQ(reps[i].params.beta, (std::vector<double>{0.5, 0.9, 0.99, 0.999})[i]);
    }
    EXPECT_LE(reps.back().gap, 1e-6 * reps.back().sharp_value);
}

TEST(QuotientCurve, SingletonMatchesDirect) {
    const auto reps = quotient_curve(7, 2, {0.6});
    ASSERT_EQ(reps.size(), 1u);
    EXPECT_EQ(reps[0].quotient, hyperbolic_quotient(make_params(7, 2, 0.6)).quotient);
}

TEST(QuotientCurve, HighOrderApproachesSharp) {
    const auto reps = quotient_curve(10, 4, {0.99, 0.9999, 0.999999});
    EXPECT_LT(reps.back().relative_gap, 1e-8);
    EXPECT_LT(reps.back().gap, reps.front().gap);
    for (const auto& r : reps) {
        // A relative gap of 1e-30 is below double resolution of the quotient
        // itself; the gap is formed from the tail and stays positive.
        EXPECT_GT(r.gap, 0.0);
        EXPECT_LE(r.quotient, r.sharp_value);
    }
}

TEST(QuotientCurve, RejectsBadGrids) {
    EXPECT_THROW(quotient_curve(5, 1, {0.5, 0.4}), DomainError);
    EXPECT_THROW(quotient_curve(5, 1, {0.0}), DomainError);
    EXPECT_THROW(quotient_curve(5, 1, {1.0}), DomainError);
}

TEST(EuclideanBallQuotient, GapShrinks) {
    const QuotientReport lo = euclidean_ball_quotient(make_params(5, 1, 0.5));
    const QuotientReport hi = euclidean_ball_quotient(make_params(5, 1, 0.999));
    EXPECT_LT(std::abs(hi.gap), std::abs(lo.gap));
}

TEST(EuclideanBallQuotient, SecondOrderPositive) {
    for (double beta : {0.5, 0.9, 0.99}) EXPECT_GT(euclidean_ball_quotient(make_params(6, 2, beta)).quotient, 0.0);
}

TEST(EuclideanBallQuotient, StaysBelowSharpValue) {
    // G_beta does not vanish on the sphere, so the restricted quotient is not
    // an admissible competitor and approaches the sharp value from below.
    for (auto [n, k] : {std::pair{5, 1}, std::pair{6, 2}})
        for (double beta : {0.5, 0.9, 0.99, 0.999}) {
            const QuotientReport r = euclidean_ball_quotient(make_params(n, k, beta));
            EXPECT_LT(r.quotient, r.sharp_value) << n << "," << k << "," << beta;
        }
}

TEST(EuclideanBallQuotient, LimitIsSharp) {
    const QuotientReport r = euclidean_ball_quotient(make_params(6, 2, 0.99999));
    EXPECT_LT(r.relative_gap, 1e-3);
}

TEST(DisplayedIntegrals, FirstOrderGradientConverges) {
    const DisplayedIntegrals d = paper_integrals_thm33(make_params(7, 1, 0.9));
    EXPECT_TRUE(d.gradient.converged);
    EXPECT_NEAR(d.gradient.endpoint_exponents.second, 0.0, 1e-3);
    EXPECT_TRUE(d.l2.divergent);
    EXPECT_NEAR(d.l2.endpoint_exponents.second, -2.0, 1e-2);
}

TEST(DisplayedIntegrals, SecondOrderBothDivergent) {
    const DisplayedIntegrals d = paper_integrals_thm33(make_params(11, 2, 0.9));
    EXPECT_FALSE(d.l2.converged);
    EXPECT_TRUE(d.l2.divergent);
    EXPECT_NEAR(d.l2.endpoint_exponents.second, -4.0, 1e-2);
    EXPECT_TRUE(d.gradient.divergent);
    EXPECT_NEAR(d.gradient.endpoint_exponents.second, -2.0, 1e-2);
}

TEST(DisplayedIntegrals, DimensionGuard) {
    EXPECT_THROW(paper_integrals_thm33(make_params(5, 2, 0.5)), DomainError);
}

TEST(TruncatedEnergy, ClosedFormFourDimensions) {
    const ExtremalParams p = make_params(4, 1, 0.0);
    for (double R : {0.5, 2.0, 6.0}) {
        const double c = std::cosh(R);
        const double want = sphere_area(3) * (c + 1.0 / c - 2.0);
        EXPECT_LE(rel(truncated_energy(p, 0, R).value, want), 1e-10) << R;
    }
}

TEST(TruncatedEnergy, SmallBall) {
    const ExtremalParams p = make_params(6, 2, 0.3);
    const double R = 1e-3;
    const double u0 = u_beta_value(p, 0.0);
    const double want = sphere_area(5) * std::pow(R, 6) / 6.0 * u0 * u0;
    EXPECT_LE(rel(truncated_energy(p, 0, R).value, want), 1e-5);
}

TEST(TruncatedEnergy, Monotone) {
    const ExtremalParams p = make_params(7, 1, 0.5);
    for (int m = 0; m <= 1; ++m) EXPECT_LE(truncated_energy(p, m, 10.0).value, truncated_energy(p, m, 20.0).value);
}

TEST(TruncatedEnergy, GrowthRate) {
    const GrowthFit g = energy_growth_rate(make_params(7, 1, 0.5), 0, {20.0, 30.0, 40.0});
    EXPECT_NEAR(g.rate, 1.0, 0.1);
    const GrowthFit g2 = energy_growth_rate(make_params(11, 2, 0.5), 0, {20.0, 30.0, 40.0});
    EXPECT_NEAR(g2.rate, 3.0, 0.3);
}

TEST(PerturbedProbe, StandardCoefficients) {
    const ExtremalParams p = make_params(7, 1, 0.9);
    const double a10 = instantiate(standard_operator(1), Rational(7)).front().to_double();
    const double R = 12.0;
    const double want = (truncated_energy(p, 1, R).value + a10 * truncated_energy(p, 0, R).value) /
                        std::pow(truncated_uq(p, R).value, 2.0 / p.q());
    EXPECT_NEAR(perturbed_quotient_probe(p, 0, {a10}, R) / want, 1.0, 1e-12);
}

TEST(PerturbedProbe, RaisingCoefficientRaisesProbe) {
    const ExtremalParams p = make_params(11, 2, 0.9);
    const auto a = instantiate(standard_operator(2), Rational(11));
    const std::vector<double> base = {a[0].to_double(), a[1].to_double()};
    const double standard = perturbed_quotient_probe(p, 1, base, 8.0);
    EXPECT_GE(perturbed_quotient_probe(p, 1, {base[0], base[1] + 1.0}, 8.0), standard);
    EXPECT_GE(perturbed_quotient_probe(p, 1, {base[0] + 1.0, base[1]}, 8.0), standard);
}

TEST(PerturbedProbe, LoweredCoefficientBelowSharp) {
    const ExtremalParams p = make_params(7, 1, 0.999);
    const double a10 = instantiate(standard_operator(1), Rational(7)).front().to_double();
    EXPECT_LT(perturbed_quotient_probe(p, 0, {a10 - 1.0}, 30.0), 1.0 / best_constant(7, 1));
}

TEST(ExactnessBridge, DoubleNearOrigin) {
    for (int k = 1; k <= 3; ++k)
        for (double r : {0.0, 0.3, 1.0}) EXPECT_LE(el_bridge_residual<double>(2 * k + 3, k, 0.4, r), 1e-10);
}

TEST(ExactnessBridge, ExtendedPrecisionOnWholeRange) {
    using Big = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<120>>;
    hypsob::testing::Gen gen(20261014);
    for (int k = 1; k <= 3; ++k) {
        const int n = 2 * k + 3;
        const Big beta("0.7");
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const Big r(gen.uniform(0.0, 20.0));
            worst = std::max(worst, el_bridge_residual<Big>(n, k, beta, r).convert_to<double>());
        }
        EXPECT_LE(worst, 1e-10) << "k=" << k;
    }
}
