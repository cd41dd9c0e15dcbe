#pragma once

#include "hypsob/constants.hpp"
#include "hypsob/errors.hpp"
#include "hypsob/jet.hpp"
#include "hypsob/operator.hpp"
#include "hypsob/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <variant>
#include <vector>

namespace hypsob {

struct ConstantFunction {};

/// exp(-1 / (1 - s^2)) with s = (r - center) / radius, zero outside |s| < 1.
struct Bump {
    double center = 1.0;
    double radius = 0.8;
};

/// The extremal u_beta.
struct ExtremalFunction {
    double beta = 0.0;
};

using RadialTestFunction = std::variant<ConstantFunction, Bump, ExtremalFunction>;

/// Below this value of 1 - s^2 the bump is below exp(-600) and is taken as 0.
inline constexpr double kBumpCutoff = 1.0 / 600.0;

/// Jet of u(r) where `r` is itself a jet (the identity in r, or r(rho)).
inline TaylorJet radial_function_jet(const RadialTestFunction& u, const TaylorJet& r, int n, int k) {
    return std::visit(
        [&](const auto& fn) -> TaylorJet {
            using T = std::decay_t<decltype(fn)>;
            if constexpr (std::is_same_v<T, ConstantFunction>) {
                return TaylorJet::constant(r.anchor(), 1.0, r.order());
            } else if constexpr (std::is_same_v<T, Bump>) {
                const TaylorJet s = (r - fn.center) / fn.radius;
                const TaylorJet g = 1.0 - s * s;
                if (g.value() < kBumpCutoff) return TaylorJet::constant(r.anchor(), 0.0, r.order());
                return exp(-1.0 / g);
            } else {
                const double norm = std::exp((n - 2.0 * k) / 4.0 * std::log1p(-fn.beta * fn.beta));
                return norm * pow(cosh(r) - fn.beta, k - n / 2.0);
            }
        },
        u);
}

/// P_k u at r0 from jets in r.
inline double hyperbolic_pk_value(const RadialTestFunction& u, int n, int k, double r0, int jet_order) {
    const std::vector<Rational> a = instantiate(standard_operator(k), Rational(n));
    TaylorJet f = radial_function_jet(u, TaylorJet::variable(r0, jet_order), n, k);
    double acc = 0.0;
    for (int m = 0; m <= k; ++m) {
        acc += a[static_cast<std::size_t>(m)].to_double() * f.value();
        if (m < k) f = hyperbolic_radial_laplacian(f, n);
    }
    return acc;
}

/// Jet in rho of the lifted function xi_k(rho) u(r(rho)), with
/// xi_k = (2 / (1 - rho^2))^((n-2k)/2) and r(rho) = log((1+rho)/(1-rho)).
inline TaylorJet lifted_jet(const RadialTestFunction& u, int n, int k, double rho0, int jet_order) {
    const TaylorJet rho = TaylorJet::variable(rho0, jet_order);
    const TaylorJet r = log(1.0 + rho) - log(1.0 - rho);
    const TaylorJet xi = pow(2.0 / (1.0 - rho * rho), (n - 2.0 * k) / 2.0);
    return xi * radial_function_jet(u, r, n, k);
}

/// Delta^k of the lifted function at rho0.
inline double flat_lifted_value(const RadialTestFunction& u, int n, int k, double rho0, int jet_order) {
    TaylorJet f = lifted_jet(u, n, k, rho0, jet_order);
    for (int m = 0; m < k; ++m) f = flat_radial_laplacian(f, n);
    return f.value();
}

struct ConformalPoint {
    double r = 0.0;
    double hyperbolic_side = 0.0;  // (2/(1-rho^2))^((n+2k)/2) P_k u
    double flat_side = 0.0;        // Delta^k (xi_k u o sigma)
};

struct ConformalReport {
    std::vector<ConformalPoint> points;
    /// max |difference| divided by the largest magnitude seen on either side.
    double residual = 0.0;
};

/// Transformation law P_k u = (2/(1-rho^2))^(-(n+2k)/2) Delta^k (xi_k u o sigma)
/// checked pointwise at rho = tanh(r/2).
inline ConformalReport conformal_law_report(int n, int k, const RadialTestFunction& u,
                                            const std::vector<double>& sample_points, int jet_order) {
    require_dimension(n, k);
    if (jet_order < 2 * k + 2)
        throw JetOrderTooLow("jet order " + std::to_string(jet_order) + " below 2k+2 = " + std::to_string(2 * k + 2));
    if (sample_points.empty()) throw std::invalid_argument("conformal_law: no sample points");
    ConformalReport rep;
    double scale = 0.0, worst = 0.0;
    for (double r0 : sample_points) {
        if (!(r0 > 0.0)) throw DomainError("sample points must be positive radii");
        if (const auto* b = std::get_if<Bump>(&u)) {
            const double s = (r0 - b->center) / b->radius;
            if (1.0 - s * s < kBumpCutoff) throw DomainError("sample point too close to the bump support boundary");
        }
        const double rho0 = std::tanh(0.5 * r0);
        ConformalPoint pt;
        pt.r = r0;
        pt.hyperbolic_side =
            std::pow(2.0 / (1.0 - rho0 * rho0), (n + 2.0 * k) / 2.0) * hyperbolic_pk_value(u, n, k, r0, jet_order);
        pt.flat_side = flat_lifted_value(u, n, k, rho0, jet_order);
        scale = std::max({scale, std::abs(pt.hyperbolic_side), std::abs(pt.flat_side)});
        worst = std::max(worst, std::abs(pt.hyperbolic_side - pt.flat_side));
        rep.points.push_back(pt);
    }
    rep.residual = scale > 0.0 ? worst / scale : worst;
    return rep;
}

inline double conformal_law_residual(int n, int k, const RadialTestFunction& u,
                                     const std::vector<double>& sample_points, int jet_order) {
    return conformal_law_report(n, k, u, sample_points, jet_order).residual;
}

inline double conformal_law_residual(int n, int k, const Bump& bump, const std::vector<double>& sample_points,
                                     int jet_order) {
    return conformal_law_residual(n, k, RadialTestFunction{bump}, sample_points, jet_order);
}

/// `count` evenly spaced radii covering the central `fraction` of the bump.
inline std::vector<double> bump_sample_points(const Bump& b, int count, double fraction = 0.9) {
    if (count < 1) throw std::invalid_argument("count must be positive");
    std::vector<double> out;
    const double lo = b.center - fraction * b.radius, hi = b.center + fraction * b.radius;
    for (int i = 0; i < count; ++i) out.push_back(count == 1 ? b.center : lo + (hi - lo) * i / (count - 1.0));
    return out;
}

// ---------------------------------------------------------------------------
// Quotient identity on compactly supported bumps.

struct BumpQuotients {
    double hyperbolic_pairing = 0.0;  // int (P_k u) u dV_h
    double hyperbolic_lq = 0.0;       // int u^q dV_h
    double flat_pairing = 0.0;        // int (Delta^k f) f dx
    double flat_energy = 0.0;         // int |Delta^(k/2) f|^2 dx
    double flat_lq = 0.0;             // int f^q dx
    double hyperbolic_quotient = 0.0;
    double flat_quotient = 0.0;
};

inline BumpQuotients bump_quotients(int n, int k, const Bump& b, int jet_order, double rel_tol = 1e-10) {
    require_dimension(n, k);
    if (!(b.center - b.radius > 0.0)) throw DomainError("bump support must avoid the origin");
    if (jet_order < 2 * k + 2) throw JetOrderTooLow("jet order below 2k+2");
    const RadialTestFunction u{b};
    const double q = 2.0 * n / (n - 2.0 * k);
    const double w = sphere_area(n - 1);
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    opt.diagnose_endpoints = false;

    const double r_lo = b.center - b.radius, r_hi = b.center + b.radius;
    auto inside = [&](double r) {
        const double s = (r - b.center) / b.radius;
        return 1.0 - s * s >= kBumpCutoff;
    };
    auto h_pair = [&](double r) {
        if (!inside(r)) return 0.0;
        const double uv = radial_function_jet(u, TaylorJet::variable(r, 0), n, k).value();
        return hyperbolic_pk_value(u, n, k, r, jet_order) * uv * w * std::pow(std::sinh(r), n - 1);
    };
    auto h_lq = [&](double r) {
        if (!inside(r)) return 0.0;
        const double uv = radial_function_jet(u, TaylorJet::variable(r, 0), n, k).value();
        return std::pow(uv, q) * w * std::pow(std::sinh(r), n - 1);
    };

    const double p_lo = std::tanh(0.5 * r_lo), p_hi = std::tanh(0.5 * r_hi);
    auto rho_inside = [&](double rho) { return inside(std::log((1.0 + rho) / (1.0 - rho))); };
    auto f_pair = [&](double rho) {
        if (!rho_inside(rho)) return 0.0;
        const double fv = lifted_jet(u, n, k, rho, 0).value();
        return flat_lifted_value(u, n, k, rho, jet_order) * fv * w * std::pow(rho, n - 1);
    };
    auto f_energy = [&](double rho) {
        if (!rho_inside(rho)) return 0.0;
        TaylorJet f = lifted_jet(u, n, k, rho, jet_order);
        for (int m = 0; m < k / 2; ++m) f = flat_radial_laplacian(f, n);
        const double v = (k % 2) ? f.derivative().value() : f.value();
        return v * v * w * std::pow(rho, n - 1);
    };
    auto f_lq = [&](double rho) {
        if (!rho_inside(rho)) return 0.0;
        return std::pow(lifted_jet(u, n, k, rho, 0).value(), q) * w * std::pow(rho, n - 1);
    };

    BumpQuotients out;
    out.hyperbolic_pairing = integrate_or_throw(h_pair, {r_lo, b.center, r_hi}, opt).value;
    out.hyperbolic_lq = integrate_or_throw(h_lq, {r_lo, b.center, r_hi}, opt).value;
    const double p_mid = std::tanh(0.5 * b.center);
    out.flat_pairing = integrate_or_throw(f_pair, {p_lo, p_mid, p_hi}, opt).value;
    out.flat_energy = integrate_or_throw(f_energy, {p_lo, p_mid, p_hi}, opt).value;
    out.flat_lq = integrate_or_throw(f_lq, {p_lo, p_mid, p_hi}, opt).value;
    out.hyperbolic_quotient = out.hyperbolic_pairing / std::pow(out.hyperbolic_lq, 2.0 / q);
    out.flat_quotient = out.flat_pairing / std::pow(out.flat_lq, 2.0 / q);
    return out;
}

}  // namespace hypsob
