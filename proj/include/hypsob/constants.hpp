#pragma once

#include "hypsob/errors.hpp"
#include "hypsob/operator.hpp"
#include "hypsob/rational.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hypsob {

/// log Gamma(x) for x > 0 by the Lanczos approximation (g = 7, nine terms),
/// relative error near 1e-15 on the positive axis.
inline double log_gamma(double x) {
    if (!(x > 0)) throw DomainError("log_gamma: argument must be positive");
    static constexpr std::array<double, 9> c = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    constexpr double g = 7.0;
    if (x < 0.5) {
        // Reflection keeps the series in its accurate range.
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double a = c[0];
    for (std::size_t i = 1; i < c.size(); ++i) a += c[i] / (z + static_cast<double>(i));
    const double t = z + g + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

inline double gamma_fn(double x) { return std::exp(log_gamma(x)); }

/// Gamma(m/2) for a positive integer m, by the exact recursion from
/// Gamma(1/2) = sqrt(pi) and Gamma(1) = 1, carried in long double.
inline long double gamma_half_integer(int m) {
    if (m < 1) throw DomainError("gamma_half_integer: m must be >= 1");
    long double g = (m % 2) ? std::sqrt(std::numbers::pi_v<long double>) : 1.0L;
    for (int j = (m % 2) ? 1 : 2; j < m; j += 2) g *= static_cast<long double>(j) / 2.0L;
    return g;
}

/// log of the surface area of the unit n-sphere in R^(n+1).
inline double log_sphere_area(int n) {
    if (n < 1) throw DomainError("sphere_area: n must be >= 1");
    const double h = (n + 1) / 2.0;
    return std::log(2.0) + h * std::log(std::numbers::pi) - log_gamma(h);
}

/// omega_n = 2 pi^((n+1)/2) / Gamma((n+1)/2).
inline double sphere_area(int n) { return std::exp(log_sphere_area(n)); }

inline void require_dimension(int n, int k) {
    if (k < 1) throw DomainError("k must be >= 1");
    if (n <= 2 * k)
        throw DimensionTooSmall("n=" + std::to_string(n) + " must exceed 2k=" + std::to_string(2 * k));
}

/// log of n(n-2k) prod_{j=1}^{k-1} (n^2 - (2j)^2).
inline double log_constant_denominator(int n, int k) {
    double s = std::log(static_cast<double>(n)) + std::log(static_cast<double>(n - 2 * k));
    for (int j = 1; j < k; ++j) s += std::log(static_cast<double>(n * n - 4 * j * j));
    return s;
}

/// Lambda_k = 2^(2k) omega_n^(-2k/n) / (n(n-2k) prod (n^2 - (2j)^2)).
inline double best_constant(int n, int k) {
    require_dimension(n, k);
    const double e = 2.0 * k / n;
    return std::exp(2.0 * k * std::log(2.0) - e * log_sphere_area(n) - log_constant_denominator(n, k));
}

/// The k = 1 constant in its classical form 4 / (n(n-2) omega_n^(2/n)).
inline double first_order_constant(int n) {
    require_dimension(n, 1);
    return 4.0 / (n * (n - 2.0) * std::pow(sphere_area(n), 2.0 / n));
}

inline double b_constant_value(int n, int k) { return b_constant(k)(Rational(n)).to_double(); }

/// b_k Lambda_k omega_n^(2k/n) - 1.
inline double consistency_residual(int n, int k) {
    require_dimension(n, k);
    const double log_prod = std::log(b_constant_value(n, k)) + std::log(best_constant(n, k)) +
                            (2.0 * k / n) * log_sphere_area(n);
    return std::expm1(log_prod);
}

/// Relative defect of 2^(n-1) omega_{n-1} Gamma(n/2)^2 / Gamma(n) = omega_n.
inline double gamma_identity_residual(int n) {
    if (n < 2) throw DomainError("gamma identity needs n >= 2");
    const double lhs = (n - 1) * std::log(2.0) + log_sphere_area(n - 1) + 2.0 * log_gamma(n / 2.0) -
                       log_gamma(static_cast<double>(n));
    return std::expm1(lhs - log_sphere_area(n));
}

struct ConstantsRecord {
    int n = 0;
    int k = 0;
    Rational q;
    double omega_n = 0;
    double lambda_k = 0;
    Rational b_k;
};

inline ConstantsRecord constants_record(int n, int k) {
    require_dimension(n, k);
    ConstantsRecord r;
    r.n = n;
    r.k = k;
    r.q = Rational(2 * n, n - 2 * k);
    r.omega_n = sphere_area(n);
    r.lambda_k = best_constant(n, k);
    r.b_k = b_constant(k)(Rational(n));
    return r;
}

}  // namespace hypsob
