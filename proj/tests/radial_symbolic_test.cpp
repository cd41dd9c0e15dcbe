#include "hypsob/euler_lagrange.hpp"
#include "hypsob/jet.hpp"
#include "hypsob/radial_expr.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace hypsob;
using hypsob::testing::lit;
using hypsob::testing::n_sym;

namespace {

XPoly xp(std::initializer_list<DimPoly> c) { return XPoly(std::vector<DimPoly>(c)); }

}  // namespace

TEST(HypLaplacian, FirstOrderExtremal) {
    const HypRadialExpr psi = extremal_expr(1).expr;
    const HypRadialExpr img = hyp_laplacian(psi);
    const DimPoly e = lit(1) - n_sym() * Rational(1, 2);
    EXPECT_TRUE(img.term(0).is_zero());
    // e [ (n/2)(c^2 - 1)(c - beta)^(e-2) - n c (c - beta)^(e-1) ]
    EXPECT_EQ(img.term(1), xp({DimPoly(), -(e * n_sym())}));
    const DimPoly half = e * n_sym() * Rational(1, 2);
    EXPECT_EQ(img.term(2), xp({-half, DimPoly(), half}));
    EXPECT_EQ(img.max_shift(), 2);
}

TEST(HypLaplacian, FirstOrderExtremalAgainstJets) {
    const int n = 7;
    const double beta = 0.3, r = 0.9;
    const NumericRadial<double> img(hyp_laplacian(extremal_expr(1).expr), n);
    const TaylorJet rj = TaylorJet::variable(r, 4);
    const TaylorJet f = pow(cosh(rj) - beta, 1.0 - n / 2.0);
    const double want = hyperbolic_radial_laplacian(f, n).value();
    EXPECT_NEAR(img(std::cosh(r), std::cosh(r) - beta), want, 1e-13 * std::abs(want));
}

TEST(HypLaplacian, Constant) {
    EXPECT_TRUE(hyp_laplacian(HypRadialExpr::polynomial(xp({lit(1)}))).is_zero());
}

TEST(HypLaplacian, CoshR) {
    const HypRadialExpr img = hyp_laplacian(HypRadialExpr::polynomial(xp({DimPoly(), lit(1)})));
    EXPECT_EQ(img.term(0), xp({DimPoly(), -n_sym()}));
    EXPECT_EQ(img.max_shift(), 0);
}

TEST(EuclidLaplacian, FirstOrderExtremalIsWeightedPower) {
    const EuclidRadialExpr img = euclid_laplacian(EuclidRadialExpr::power_family(1));
    // 4 b_1 tau^2 (tau^2 + rho^2)^(-1 - n/2)
    const Poly<DimPoly> weight = Poly<DimPoly>::monomial(n_sym() * (n_sym() - lit(2)), 1);
    EXPECT_EQ(img, parameter_weight_at_shift<EuclideanGeometry>(img.lead_exponent(), weight, 2));
}

TEST(EuclidLaplacian, HarmonicAtZeroTau) {
    const NumericRadial<double> img(euclid_laplacian(EuclidRadialExpr::power_family(1)), 6.0);
    // The two terms cancel; compare against the size of either one, 2n|e| x^(e-1).
    for (double x : {0.1, 0.7, 2.5}) EXPECT_NEAR(img(x, x), 0.0, 1e-13 * 24.0 * std::pow(x, -3.0));
}

TEST(EuclidLaplacian, Constant) {
    EXPECT_TRUE(euclid_laplacian(EuclidRadialExpr::polynomial(xp({lit(3)}))).is_zero());
}

TEST(EuclidLaplacian, RhoSquared) {
    const EuclidRadialExpr img = euclid_laplacian(EuclidRadialExpr::polynomial(xp({DimPoly(), lit(1)})));
    EXPECT_EQ(img.term(0), xp({-(n_sym() * 2)}));
}

TEST(RadialDerivative, HyperbolicChainRule) {
    const auto d = radial_derivative(extremal_expr(2).expr);
    const DimPoly e = lit(2) - n_sym() * Rational(1, 2);
    EXPECT_EQ(d.d_dx.term(1), xp({e}));
    EXPECT_TRUE(d.d_dx.term(0).is_zero());
    EXPECT_EQ(d.weight_squared, xp({lit(-1), DimPoly(), lit(1)}));  // sinh^2 r
}

TEST(RadialDerivative, EuclideanChainRule) {
    const auto d = radial_derivative(EuclidRadialExpr::power_family(1));
    EXPECT_EQ(d.d_dx.term(1), xp({lit(1) - n_sym() * Rational(1, 2)}));
    EXPECT_EQ(d.weight_squared, xp({DimPoly(), lit(4)}));  // (2 rho)^2
}

TEST(RadialDerivative, Constant) {
    EXPECT_TRUE(radial_derivative(HypRadialExpr::polynomial(xp({lit(5)}))).d_dx.is_zero());
}

TEST(ExtremalExpr, Shapes) {
    const HypRadialExpr e1 = extremal_expr(1).expr;
    EXPECT_EQ(e1.terms().size(), 1u);
    EXPECT_EQ(e1.term(0), xp({lit(1)}));
    EXPECT_EQ(extremal_expr(3).expr.lead_exponent(), lit(3) - n_sym() * Rational(1, 2));
    for (double n : {5.0, 9.0, 12.0}) EXPECT_DOUBLE_EQ(NumericRadial<double>(extremal_expr(2).expr, n)(1.0, 1.0), 1.0);
}

TEST(ElSolve, FirstOrder) {
    const ElSolution s = el_solve(1);
    const DimPoly b1 = n_sym() * (n_sym() - lit(2)) * Rational(1, 4);
    EXPECT_EQ(s.a[0], RatFun(-b1));
    EXPECT_EQ(s.b, RatFun(b1));
}

TEST(ElSolve, SecondOrder) {
    const ElSolution s = el_solve(2);
    const DimPoly n2 = n_sym() * n_sym();
    EXPECT_EQ(s.a[1], RatFun(-(n2 - n_sym() * 2 - lit(4)) * Rational(1, 2)));
    const DimPoly b2 = n_sym() * (n_sym() - lit(4)) * (n2 - lit(4)) * Rational(1, 16);
    EXPECT_EQ(s.a[0], RatFun(b2));
    EXPECT_EQ(s.b, RatFun(b2));
}

TEST(ElSolve, FourthOrderMatchesProduct) {
    const ElSolution s = el_solve(4);
    const OperatorPoly op = standard_operator(4);
    for (int m = 0; m < 4; ++m) EXPECT_EQ(s.a[static_cast<std::size_t>(m)], RatFun(op.coefficient(m)));
    const DimPoly a41 = -deserialize_dim_poly("[-144, -108, 39, 29/2, -3, -3/8, 1/16]");
    EXPECT_EQ(s.a[1], RatFun(a41));
}

TEST(ElSolve, BetaDoesNotEnter) {
    for (int k = 1; k <= 3; ++k) {
        const ElSolution generic = el_solve(k);
        for (const Rational& beta : {Rational(1, 3), Rational(7, 9)}) {
            const ElSolution fixed = el_solve(k, beta);
            EXPECT_EQ(fixed.b, generic.b);
            for (int m = 0; m < k; ++m) EXPECT_EQ(fixed.a[static_cast<std::size_t>(m)], generic.a[static_cast<std::size_t>(m)]);
        }
        EXPECT_TRUE(generic.polynomial());
    }
}

TEST(ElSolve, InterpolationRouteAgrees) {
    for (int k = 1; k <= 3; ++k) {
        const auto v = el_solve_interpolated(k);
        for (int m = 0; m < k; ++m) EXPECT_EQ(v[static_cast<std::size_t>(m)], standard_operator(k).coefficient(m));
        EXPECT_EQ(v.back(), b_constant(k));
    }
}

TEST(ElResidual, FirstAndFifthOrderVanish) {
    EXPECT_TRUE(el_residual(1).is_zero());
    EXPECT_TRUE(el_residual(5).is_zero());
}

TEST(ElResidual, PerturbationShowsUp) {
    auto coeffs = standard_operator(2).coeffs();
    coeffs[1] += lit(1);
    const HypRadialExpr res = el_residual(2, coeffs, b_constant(2));
    EXPECT_FALSE(res.is_zero());
    // The defect is exactly one extra copy of L psi.
    EXPECT_EQ(res, extremal_laplacian_images(2)[1]);
    EXPECT_FALSE(offending_monomial(res).empty());
    coeffs[1] += lit(2);
    EXPECT_EQ(el_residual(2, coeffs, b_constant(2)), extremal_laplacian_images(2)[1] * lit(3));
}

TEST(EuclidElResidual, Vanishes) {
    EXPECT_TRUE(euclid_el_residual(1).is_zero());
    EXPECT_TRUE(euclid_el_residual(3).is_zero());
}

TEST(EuclidElResidual, WrongConstant) {
    const DimPoly wrong = n_sym() * (n_sym() - lit(2)) * Rational(1, 2);
    const EuclidRadialExpr res = euclid_el_residual(1, wrong);
    EXPECT_FALSE(res.is_zero());
    EXPECT_NE(offending_monomial(res).find("tau2"), std::string::npos);
}
