#pragma once

#include "hypsob/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

namespace hypsob {

/// Truncated Taylor expansion f(a + t) = sum_j c_j t^j, j = 0..order. Binary
/// operations truncate to the lower of the two orders.
class TaylorJet {
public:
    TaylorJet() = default;
    TaylorJet(double anchor, std::vector<double> coeffs) : anchor_(anchor), c_(std::move(coeffs)) {
        if (c_.empty()) c_.push_back(0.0);
    }

    static TaylorJet constant(double anchor, double value, int order) {
        std::vector<double> c(static_cast<std::size_t>(order) + 1, 0.0);
        c[0] = value;
        return {anchor, std::move(c)};
    }
    /// The identity function expanded at `anchor`.
    static TaylorJet variable(double anchor, int order) {
        TaylorJet j = constant(anchor, anchor, order);
        if (order >= 1) j.c_[1] = 1.0;
        return j;
    }

    double anchor() const { return anchor_; }
    int order() const { return static_cast<int>(c_.size()) - 1; }
    const std::vector<double>& coeffs() const { return c_; }
    double operator[](std::size_t i) const { return i < c_.size() ? c_[i] : 0.0; }
    double value() const { return c_[0]; }

    /// m-th derivative at the anchor.
    double derivative_value(int m) const {
        if (m > order()) throw JetOrderTooLow("derivative " + std::to_string(m) + " exceeds jet order");
        double f = 1.0;
        for (int i = 2; i <= m; ++i) f *= i;
        return f * c_[static_cast<std::size_t>(m)];
    }

    /// Jet of f'; the order drops by one.
    TaylorJet derivative() const {
        if (order() < 1) throw JetOrderTooLow("cannot differentiate an order-0 jet");
        std::vector<double> d(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
        return {anchor_, std::move(d)};
    }

    TaylorJet truncated(int order) const {
        std::vector<double> c(c_.begin(), c_.begin() + std::min<std::ptrdiff_t>(order + 1, c_.size()));
        return {anchor_, std::move(c)};
    }

    TaylorJet operator-() const {
        TaylorJet r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }
    friend TaylorJet operator+(const TaylorJet& a, const TaylorJet& b) {
        const std::size_t m = std::min(a.c_.size(), b.c_.size());
        std::vector<double> c(m);
        for (std::size_t i = 0; i < m; ++i) c[i] = a.c_[i] + b.c_[i];
        return {a.anchor_, std::move(c)};
    }
    friend TaylorJet operator-(const TaylorJet& a, const TaylorJet& b) { return a + (-b); }
    friend TaylorJet operator*(const TaylorJet& a, const TaylorJet& b) {
        const std::size_t m = std::min(a.c_.size(), b.c_.size());
        std::vector<double> c(m, 0.0);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = 0; j <= i; ++j) c[i] += a.c_[j] * b.c_[i - j];
        return {a.anchor_, std::move(c)};
    }
    friend TaylorJet operator/(const TaylorJet& a, const TaylorJet& b) {
        if (b.c_[0] == 0.0) throw DomainError("jet division by a function vanishing at the anchor");
        const std::size_t m = std::min(a.c_.size(), b.c_.size());
        std::vector<double> c(m, 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            double s = a.c_[i];
            for (std::size_t j = 1; j <= i; ++j) s -= b.c_[j] * c[i - j];
            c[i] = s / b.c_[0];
        }
        return {a.anchor_, std::move(c)};
    }

    friend TaylorJet operator+(TaylorJet a, double s) {
        a.c_[0] += s;
        return a;
    }
    friend TaylorJet operator+(double s, TaylorJet a) { return std::move(a) + s; }
    friend TaylorJet operator-(TaylorJet a, double s) { return std::move(a) + (-s); }
    friend TaylorJet operator-(double s, const TaylorJet& a) { return (-a) + s; }
    friend TaylorJet operator*(TaylorJet a, double s) {
        for (auto& x : a.c_) x *= s;
        return a;
    }
    friend TaylorJet operator*(double s, TaylorJet a) { return std::move(a) * s; }
    friend TaylorJet operator/(TaylorJet a, double s) { return std::move(a) * (1.0 / s); }
    friend TaylorJet operator/(double s, const TaylorJet& a) { return constant(a.anchor_, s, a.order()) / a; }

private:
    double anchor_ = 0.0;
    std::vector<double> c_{0.0};
};

inline TaylorJet exp(const TaylorJet& f) {
    const auto& a = f.coeffs();
    std::vector<double> e(a.size(), 0.0);
    e[0] = std::exp(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * e[k - j];
        e[k] = s / static_cast<double>(k);
    }
    return {f.anchor(), std::move(e)};
}

inline TaylorJet log(const TaylorJet& f) {
    const auto& a = f.coeffs();
    if (!(a[0] > 0.0)) throw DomainError("jet log of a nonpositive value");
    std::vector<double> l(a.size(), 0.0);
    l[0] = std::log(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        double s = a[k];
        for (std::size_t j = 1; j < k; ++j) s -= static_cast<double>(j) / static_cast<double>(k) * l[j] * a[k - j];
        l[k] = s / a[0];
    }
    return {f.anchor(), std::move(l)};
}

/// f^alpha for f positive at the anchor.
inline TaylorJet pow(const TaylorJet& f, double alpha) {
    const auto& a = f.coeffs();
    if (!(a[0] > 0.0)) throw DomainError("jet pow of a nonpositive value");
    std::vector<double> p(a.size(), 0.0);
    p[0] = std::pow(a[0], alpha);
    for (std::size_t k = 1; k < a.size(); ++k) {
        double s = 0.0;
        for (std::size_t j = 1; j <= k; ++j)
            s += ((alpha + 1.0) * static_cast<double>(j) - static_cast<double>(k)) * a[j] * p[k - j];
        p[k] = s / (static_cast<double>(k) * a[0]);
    }
    return {f.anchor(), std::move(p)};
}

namespace detail {

/// Coupled recurrences for s = sinh f and c = cosh f: s' = c f', c' = s f'.
inline void sinh_cosh(const TaylorJet& f, std::vector<double>& s, std::vector<double>& c) {
    const auto& a = f.coeffs();
    s.assign(a.size(), 0.0);
    c.assign(a.size(), 0.0);
    s[0] = std::sinh(a[0]);
    c[0] = std::cosh(a[0]);
    for (std::size_t k = 1; k < a.size(); ++k) {
        double ss = 0.0, cc = 0.0;
        for (std::size_t j = 1; j <= k; ++j) {
            ss += static_cast<double>(j) * a[j] * c[k - j];
            cc += static_cast<double>(j) * a[j] * s[k - j];
        }
        s[k] = ss / static_cast<double>(k);
        c[k] = cc / static_cast<double>(k);
    }
}

}  // namespace detail

inline TaylorJet sinh(const TaylorJet& f) {
    std::vector<double> s, c;
    detail::sinh_cosh(f, s, c);
    return {f.anchor(), std::move(s)};
}

inline TaylorJet cosh(const TaylorJet& f) {
    std::vector<double> s, c;
    detail::sinh_cosh(f, s, c);
    return {f.anchor(), std::move(c)};
}

/// Hyperbolic radial Laplacian -(f'' + (n-1) coth r f') of a jet in r.
inline TaylorJet hyperbolic_radial_laplacian(const TaylorJet& f, double n) {
    const TaylorJet d1 = f.derivative();
    const TaylorJet d2 = d1.derivative();
    const TaylorJet r = TaylorJet::variable(f.anchor(), d2.order());
    return -(d2 + (n - 1.0) * (cosh(r) / sinh(r)) * d1);
}

/// Flat radial Laplacian -(f'' + (n-1) f' / rho) of a jet in rho.
inline TaylorJet flat_radial_laplacian(const TaylorJet& f, double n) {
    const TaylorJet d1 = f.derivative();
    const TaylorJet d2 = d1.derivative();
    const TaylorJet rho = TaylorJet::variable(f.anchor(), d2.order());
    return -(d2 + (n - 1.0) * d1 / rho);
}

}  // namespace hypsob
