#pragma once

#include "hypsob/constants.hpp"
#include "hypsob/errors.hpp"
#include "hypsob/euler_lagrange.hpp"
#include "hypsob/operator.hpp"
#include "hypsob/quadrature.hpp"
#include "hypsob/radial_expr.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace hypsob {

/// Largest admissible beta; closer to 1 the family leaves double range.
inline constexpr double kMaxBeta = 1.0 - 1e-10;

struct ExtremalParams {
    int n = 0;
    int k = 0;
    double beta = 0.0;

    double q() const { return 2.0 * n / (n - 2.0 * k); }
    double one_minus_beta() const { return 1.0 - beta; }
    /// (1 - beta) / (1 + beta)
    double tau2() const { return one_minus_beta() / (1.0 + beta); }
    /// log(1 - beta^2), formed without cancellation.
    double log_one_minus_beta2() const { return std::log(one_minus_beta()) + std::log1p(beta); }
};

inline ExtremalParams make_params(int n, int k, double beta) {
    require_dimension(n, k);
    if (!(beta >= 0.0) || !(beta <= kMaxBeta))
        throw DomainError("beta must lie in [0, 1 - 1e-10], got " + std::to_string(beta));
    return {n, k, beta};
}

/// cosh r - beta = 2 sinh^2(r/2) + (1 - beta).
inline double hyperbolic_base(const ExtremalParams& p, double r) {
    const double s = std::sinh(0.5 * r);
    return 2.0 * s * s + p.one_minus_beta();
}

inline double log_u_beta(const ExtremalParams& p, double r) {
    return (p.n - 2.0 * p.k) / 4.0 * p.log_one_minus_beta2() - (p.n - 2.0 * p.k) / 2.0 * std::log(hyperbolic_base(p, r));
}

/// u_beta(r) = (1 - beta^2)^((n-2k)/4) (cosh r - beta)^(k - n/2).
inline double u_beta_value(const ExtremalParams& p, double r) {
    if (r < 0) throw DomainError("u_beta: r must be nonnegative");
    return std::exp(log_u_beta(p, r));
}

/// G_beta(x) = (2 tau)^(n/2 - k) (tau^2 + |x|^2)^(k - n/2).
inline double g_beta_value(const ExtremalParams& p, double rho) {
    const double t2 = p.tau2();
    const double e = p.k - p.n / 2.0;
    return std::exp(-e * std::log(2.0 * std::sqrt(t2)) + e * std::log(t2 + rho * rho));
}

/// Relative defect of the lift of G_beta to u_beta at |x| = x_norm, together
/// with that of (1 + |x|^2)/(1 - |x|^2) = cosh r; the larger is returned.
inline double lift_residual(const ExtremalParams& p, double x_norm) {
    if (!(x_norm >= 0.0 && x_norm < 1.0)) throw DomainError("lift_residual: |x| must lie in [0, 1)");
    const double r = 2.0 * std::atanh(x_norm);
    const double x2 = x_norm * x_norm;
    const double lifted = std::pow(2.0 / (1.0 - x2), p.k - p.n / 2.0) * g_beta_value(p, x_norm);
    const double direct = std::exp((p.n - 2.0 * p.k) / 4.0 * p.log_one_minus_beta2()) *
                          std::pow(std::cosh(r) - p.beta, p.k - p.n / 2.0);
    const double cosh_direct = std::cosh(r);
    const double cosh_ball = (1.0 + x2) / (1.0 - x2);
    const double d1 = std::abs(lifted - direct) / std::max(std::abs(lifted), std::abs(direct));
    const double d2 = std::abs(cosh_ball - cosh_direct) / cosh_direct;
    return std::max(d1, d2);
}

// ---------------------------------------------------------------------------
// Integral of u_beta^q over hyperbolic space.

namespace detail {

/// z^(n-1) (1 + z^2)^(-n)
inline double uq_z_integrand(int n, double z) {
    if (z <= 0.0) return 0.0;
    return std::exp((n - 1) * std::log(z) - n * std::log1p(z * z));
}

}  // namespace detail

/// Pieces of the z-form: total = C int_0^inf f and tail = C int_Z^inf f,
/// with C = 2^n omega_{n-1} and Z = sqrt((1+beta)/(1-beta)). By z -> 1/z the
/// tail equals C int_0^{1/Z} f, so neither piece suffers cancellation.
struct UqParts {
    double total = 0.0;
    double tail = 0.0;
    QuadratureResult total_result;
    QuadratureResult tail_result;
};

inline UqParts integral_uq_parts(const ExtremalParams& p, double rel_tol) {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("rel_tol must be positive");
    const double C = std::exp(p.n * std::log(2.0) + log_sphere_area(p.n - 1));
    const int n = p.n;
    auto f = [n](double z) { return detail::uq_z_integrand(n, z); };
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    UqParts out;
    out.total_result = integrate_or_throw(f, {0.0, 1.0}, opt);
    out.total = 2.0 * C * out.total_result.value;
    out.tail_result = integrate_or_throw(f, {0.0, std::sqrt(p.tau2())}, opt);
    out.tail = C * out.tail_result.value;
    return out;
}

/// int_{H^n} u_beta^q dV_h.
inline QuadratureResult integral_uq(const ExtremalParams& p, double rel_tol = 1e-10) {
    const UqParts parts = integral_uq_parts(p, rel_tol);
    const double C = std::exp(p.n * std::log(2.0) + log_sphere_area(p.n - 1));
    QuadratureResult r;
    r.value = parts.total - parts.tail;
    r.error_estimate = 2.0 * C * parts.total_result.error_estimate + C * parts.tail_result.error_estimate;
    r.subdivisions = parts.total_result.subdivisions + parts.tail_result.subdivisions;
    r.endpoint_exponents = {p.n - 1.0, 0.0};
    r.converged = true;
    return r;
}

/// Same integral computed directly in geodesic polar coordinates,
/// omega_{n-1} int_0^inf u_beta^q sinh^(n-1) r dr.
inline QuadratureResult integral_uq_polar(const ExtremalParams& p, double rel_tol = 1e-10) {
    const double log_w = log_sphere_area(p.n - 1);
    auto f = [&](double r) {
        if (r <= 0.0) return 0.0;
        return std::exp(log_w + p.q() * log_u_beta(p, r) + (p.n - 1) * std::log(std::sinh(r)));
    };
    const double s = std::sqrt(p.one_minus_beta());
    std::vector<double> pts = {0.0};
    for (double x : {s, 10.0 * s, 1.0, 5.0, 20.0, 60.0})
        if (x > pts.back() * 1.5) pts.push_back(x);
    if (pts.back() != 60.0) pts.push_back(60.0);
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    opt.diagnose_endpoints = false;
    return integrate_or_throw(f, pts, opt);
}

// ---------------------------------------------------------------------------
// Sobolev quotients.

struct QuotientReport {
    ExtremalParams params;
    double integral_uq = 0.0;
    double quotient = 0.0;
    double sharp_value = 0.0;  // 1 / Lambda_k
    double gap = 0.0;          // sharp_value - quotient
    double relative_gap = 0.0;
    double err_estimate = 0.0;
};

/// Quotient b_k (int u^q)^(2k/n) of the extremal family, using
/// P_k u_beta = b_k u_beta^(q-1). The gap is formed from the tail, since
/// omega_n - int u^q equals the tail integral exactly.
inline QuotientReport hyperbolic_quotient(const ExtremalParams& p, double rel_tol = 1e-10) {
    const UqParts parts = integral_uq_parts(p, rel_tol);
    const QuadratureResult iq = integral_uq(p, rel_tol);
    QuotientReport r;
    r.params = p;
    r.integral_uq = iq.value;
    r.sharp_value = 1.0 / best_constant(p.n, p.k);
    const double e = 2.0 * p.k / p.n;
    r.relative_gap = -std::expm1(e * std::log1p(-parts.tail / sphere_area(p.n)));
    r.gap = r.sharp_value * r.relative_gap;
    r.quotient = r.sharp_value - r.gap;
    // Propagated quadrature error of the quotient.
    r.err_estimate = r.quotient * e * iq.error_estimate / iq.value;
    return r;
}

/// Reports for an increasing list of betas in (0, 1), computed concurrently
/// and returned in input order.
inline std::vector<QuotientReport> quotient_curve(int n, int k, const std::vector<double>& betas,
                                                  double rel_tol = 1e-10) {
    require_dimension(n, k);
    for (std::size_t i = 0; i < betas.size(); ++i) {
        if (!(betas[i] > 0.0 && betas[i] < 1.0)) throw DomainError("betas must lie in (0, 1)");
        if (i && !(betas[i] > betas[i - 1])) throw DomainError("betas must be strictly increasing");
    }
    std::vector<std::future<QuotientReport>> jobs;
    for (double b : betas) {
        const ExtremalParams p = make_params(n, k, b);
        jobs.push_back(std::async(std::launch::async, [p, rel_tol] { return hyperbolic_quotient(p, rel_tol); }));
    }
    std::vector<QuotientReport> out;
    for (auto& j : jobs) out.push_back(j.get());
    return out;
}

namespace detail {

/// Numeric energy density of order m for a radial expression family: even m
/// gives (L^(m/2) f)^2, odd m gives weight^2 (d/dx L^((m-1)/2) f)^2.
template <class G>
struct EnergyDensity {
    bool odd = false;
    NumericRadial<double> eval;

    EnergyDensity(int k, int m, double n) : odd(m % 2 == 1) {
        RadialExpr<G> base = laplacian_power(RadialExpr<G>::power_family(k), m / 2);
        eval = NumericRadial<double>(odd ? x_derivative(base) : base, n);
    }

    /// `weight_sq` is sinh^2 r (hyperbolic) or 4 rho^2 (flat).
    double operator()(double x, double base, double weight_sq) const {
        const double v = eval(x, base);
        return odd ? weight_sq * v * v : v * v;
    }
};

}  // namespace detail

/// Quotient int_B |Delta^(k/2) G_beta|^2 dx / (int_B G_beta^q dx)^(2/q) over
/// the unit ball, with integrands generated symbolically.
inline QuotientReport euclidean_ball_quotient(const ExtremalParams& p, double rel_tol = 1e-10) {
    const double n = p.n;
    const double t2 = p.tau2();
    const double tau = std::sqrt(t2);
    const double log_norm = (n / 2.0 - p.k) * std::log(2.0 * tau);
    const double log_w = log_sphere_area(p.n - 1);
    const detail::EnergyDensity<EuclideanGeometry> density(p.k, p.k, n);

    auto num = [&](double rho) {
        if (rho <= 0.0) return 0.0;
        const double w = rho * rho;
        return std::exp(2.0 * log_norm + log_w + (n - 1) * std::log(rho)) * density(w, t2 + w, 4.0 * w);
    };
    auto den = [&](double rho) {
        if (rho <= 0.0) return 0.0;
        return std::exp(log_w + (n - 1) * std::log(rho) + p.q() * std::log(g_beta_value(p, rho)));
    };
    std::vector<double> pts = {0.0};
    for (double x : {tau, 10.0 * tau, 1.0})
        if (x > pts.back() * 1.5 && x < 1.0) pts.push_back(x);
    pts.push_back(1.0);
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    opt.diagnose_endpoints = false;
    const QuadratureResult a = integrate_or_throw(num, pts, opt);
    const QuadratureResult b = integrate_or_throw(den, pts, opt);

    QuotientReport r;
    r.params = p;
    r.integral_uq = b.value;
    r.quotient = a.value / std::pow(b.value, 2.0 / p.q());
    r.sharp_value = 1.0 / best_constant(p.n, p.k);
    r.gap = r.sharp_value - r.quotient;
    r.relative_gap = r.gap / r.sharp_value;
    r.err_estimate = r.quotient * (a.error_estimate / a.value + (2.0 / p.q()) * b.error_estimate / b.value);
    return r;
}

// ---------------------------------------------------------------------------
// Energies entering the perturbed functional.

/// The two one-dimensional integrals in t in [0, sqrt((1+beta)/(1-beta))]
/// for the L^2 and gradient energies of u_beta, transcribed as displayed with
/// their prefactors. Divergence is diagnosed and reported, not thrown.
struct DisplayedIntegrals {
    QuadratureResult l2;
    QuadratureResult gradient;
};

inline DisplayedIntegrals paper_integrals_thm33(const ExtremalParams& p, double rel_tol = 1e-10) {
    if (!(p.n > 4 * p.k - 2)) throw DomainError("requires n > 4k - 2");
    const double n = p.n, k = p.k;
    const double g = p.tau2();
    const double sg = std::sqrt(g);
    const double Z = 1.0 / sg;
    const double log_pre = n * std::log(2.0) + log_sphere_area(p.n - 1) + (-k - 1) * p.log_one_minus_beta2() +
                           2.0 * k * std::log(p.one_minus_beta());
    const double one_minus_b2 = std::exp(p.log_one_minus_beta2());
    auto edge = [sg](double t) { return (1.0 - sg * t) * (1.0 + sg * t); };  // 1 - g t^2

    auto l2 = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double e = edge(t);
        if (e <= 0.0) return std::numeric_limits<double>::infinity();
        return std::exp(log_pre + std::log(one_minus_b2 / e) - (2.0 * k - 1.0) * std::log(e) +
                        (n - 1.0) * std::log(t) - (n - 2.0 * k) * std::log1p(t * t));
    };
    auto grad = [&](double t) {
        if (t <= 0.0) return 0.0;
        const double e = edge(t);
        double edge_term = 0.0;
        if (p.k > 1) {
            if (e <= 0.0) return std::numeric_limits<double>::infinity();
            edge_term = -(2.0 * k - 2.0) * std::log(e);
        }
        return std::exp(log_pre + 2.0 * std::log(std::abs(k - n / 2.0)) + edge_term + (n + 1.0) * std::log(t) -
                        (n - 2.0 * k + 2.0) * std::log1p(t * t));
    };
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    DisplayedIntegrals out;
    out.l2 = integrate_pieces(l2, {0.0, Z}, opt);
    out.gradient = integrate_pieces(grad, {0.0, Z}, opt);
    return out;
}

/// omega_{n-1} int_0^R |Delta_h^(m/2) u_beta|^2 sinh^(n-1) r dr, with odd m
/// meaning the squared radial derivative of Delta_h^((m-1)/2) u_beta.
inline QuadratureResult truncated_energy(const ExtremalParams& p, int m, double R, double rel_tol = 1e-10) {
    if (m < 0 || m > p.k) throw IndexOutOfRange("energy order m must lie in [0, k]");
    if (!(R > 0.0)) throw DomainError("truncation radius must be positive");
    const double n = p.n;
    const double log_norm = (p.n - 2.0 * p.k) / 4.0 * p.log_one_minus_beta2();
    const double log_w = log_sphere_area(p.n - 1);
    const detail::EnergyDensity<HyperbolicGeometry> density(p.k, m, n);
    auto f = [&](double r) {
        if (r <= 0.0) return 0.0;
        const double sh = std::sinh(r);
        const double d = density(std::cosh(r), hyperbolic_base(p, r), sh * sh);
        return d * std::exp(2.0 * log_norm + log_w + (n - 1.0) * std::log(sh));
    };
    const double s = std::sqrt(p.one_minus_beta());
    std::vector<double> pts = {0.0};
    for (double x : {s, 10.0 * s, 1.0, 5.0})
        if (x > pts.back() * 1.5 && x < R) pts.push_back(x);
    pts.push_back(R);
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    opt.diagnose_endpoints = false;
    return integrate_or_throw(f, pts, opt);
}

/// omega_{n-1} int_0^R u_beta^q sinh^(n-1) r dr.
inline QuadratureResult truncated_uq(const ExtremalParams& p, double R, double rel_tol = 1e-10) {
    const double log_w = log_sphere_area(p.n - 1);
    auto f = [&](double r) {
        if (r <= 0.0) return 0.0;
        return std::exp(log_w + p.q() * log_u_beta(p, r) + (p.n - 1) * std::log(std::sinh(r)));
    };
    const double s = std::sqrt(p.one_minus_beta());
    std::vector<double> pts = {0.0};
    for (double x : {s, 10.0 * s, 1.0, 5.0})
        if (x > pts.back() * 1.5 && x < R) pts.push_back(x);
    pts.push_back(R);
    QuadratureOptions opt;
    opt.rel_tol = rel_tol;
    opt.diagnose_endpoints = false;
    return integrate_or_throw(f, pts, opt);
}

struct GrowthFit {
    std::vector<double> radii;
    std::vector<double> energies;
    double rate = 0.0;  // least-squares slope of log E against R
};

inline GrowthFit energy_growth_rate(const ExtremalParams& p, int m, const std::vector<double>& radii,
                                    double rel_tol = 1e-10) {
    if (radii.size() < 2) throw std::invalid_argument("growth fit needs at least two radii");
    GrowthFit g;
    g.radii = radii;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double R : radii) {
        const double e = truncated_energy(p, m, R, rel_tol).value;
        g.energies.push_back(e);
        const double y = std::log(e);
        sx += R;
        sy += y;
        sxx += R * R;
        sxy += R * y;
    }
    const double N = static_cast<double>(radii.size());
    g.rate = (N * sxy - sx * sy) / (N * sxx - sx * sx);
    return g;
}

/// Truncated quotient [sum_m c_m E_m(R)] / (int_{r<R} u^q)^(2/q) with c_k = 1,
/// c_m = a_{km} for m > i and c_m = tau[m] for m <= i.
inline double perturbed_quotient_probe(const ExtremalParams& p, int i, const std::vector<double>& tau, double R,
                                       double rel_tol = 1e-10) {
    if (!(p.n > 4 * p.k - 2)) throw DomainError("requires n > 4k - 2");
    if (i < 0 || i > p.k - 1) throw IndexOutOfRange("i must lie in [0, k-1]");
    if (tau.size() != static_cast<std::size_t>(i) + 1) throw std::invalid_argument("tau must have i + 1 entries");
    const std::vector<Rational> a = instantiate(standard_operator(p.k), Rational(p.n));
    double num = 0.0;
    for (int m = 0; m <= p.k; ++m) {
        const double c = m <= i ? tau[static_cast<std::size_t>(m)] : a[static_cast<std::size_t>(m)].to_double();
        num += c * truncated_energy(p, m, R, rel_tol).value;
    }
    const double den = truncated_uq(p, R, rel_tol).value;
    return num / std::pow(den, 2.0 / p.q());
}

/// Floating-point shadow of the exact Euler-Lagrange identity: relative
/// defect of sum_m a_m L^m psi = b (1 - beta^2)^k (c - beta)^(-k - n/2) at
/// radius r, evaluated in the scalar type T.
template <class T>
T el_bridge_residual(int n, int k, const T& beta, const T& r) {
    using std::cosh;
    using std::sinh;
    using std::abs;
    using std::log;
    using std::exp;
    const T nn(n);
    const auto images = extremal_laplacian_images(k);
    const auto op = standard_operator(k);
    const T c = cosh(r);
    const T s = sinh(r / 2);
    const T base = 2 * s * s + (T(1) - beta);
    T lhs(0);
    for (int m = 0; m <= k; ++m) {
        const NumericRadial<T> img(images[static_cast<std::size_t>(m)], nn);
        lhs += numeric<T>(op.coefficient(m), nn) * img(c, base);
    }
    const T one_minus_b2 = (T(1) - beta) * (T(1) + beta);
    const T rhs = numeric<T>(b_constant(k), nn) * exp(T(k) * log(one_minus_b2)) *
                  exp(-(T(k) + nn / 2) * log(base));
    return abs(lhs - rhs) / abs(rhs);
}

}  // namespace hypsob
