#pragma once

#include "hypsob/errors.hpp"
#include "hypsob/multi_poly.hpp"
#include "hypsob/poly.hpp"
#include "hypsob/rational.hpp"

#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace hypsob {

/// Polynomial in the radial variable x with coefficients in Q[n].
using XPoly = Poly<DimPoly>;
/// Polynomial in x whose coefficients are polynomials in the family
/// parameter (beta or tau^2) over Q[n].
using ClearedPoly = Poly<Poly<DimPoly>>;

/// Hyperbolic radial functions in x = cosh r. The radial Laplacian reads
/// -[(x^2 - 1) f'' + n x f'] and the base of the power family is (x - beta).
struct HyperbolicGeometry {
    static constexpr const char* variable = "c";
    static constexpr const char* parameter = "beta";
    static constexpr Symbol variable_symbol = Symbol::c;
    static constexpr Symbol parameter_symbol = Symbol::beta;
    /// base = x + sign * parameter
    static constexpr int parameter_sign = -1;

    static XPoly second_order() { return XPoly{DimPoly(-1), DimPoly(0), DimPoly(1)}; }
    static XPoly first_order() { return XPoly{DimPoly(0), dim_symbol()}; }
    /// (d/dr)^2 expressed through d/dx: d/dr = sinh r d/dc, sinh^2 r = c^2 - 1.
    static XPoly derivative_weight_squared() { return second_order(); }
};

/// Flat radial functions in x = rho^2. The Laplacian reads -[4x f'' + 2n f']
/// and the base of the power family is (tau^2 + x).
struct EuclideanGeometry {
    static constexpr const char* variable = "rho2";
    static constexpr const char* parameter = "tau2";
    static constexpr Symbol variable_symbol = Symbol::rho2;
    static constexpr Symbol parameter_symbol = Symbol::tau2;
    static constexpr int parameter_sign = 1;

    static XPoly second_order() { return XPoly{DimPoly(0), DimPoly(4)}; }
    static XPoly first_order() { return XPoly{dim_symbol() * Rational(2)}; }
    /// d/drho = 2 rho d/dw, (2 rho)^2 = 4w.
    static XPoly derivative_weight_squared() { return second_order(); }
};

/// Finite sum  sum_s p_s(x; n) * base^(e0 - s)  with a common leading
/// exponent e0 in Q[n]. Representation is unique: x and base are algebraically
/// independent once the parameter is free.
template <class G>
class RadialExpr {
public:
    RadialExpr() = default;
    explicit RadialExpr(DimPoly lead_exponent) : lead_(std::move(lead_exponent)) {}

    /// The power family base^(k - n/2) of the extremal functions.
    static RadialExpr power_family(int k) {
        RadialExpr e(DimPoly{Rational(k), Rational(-1, 2)});
        e.add(0, XPoly(DimPoly(1)));
        return e;
    }

    /// A plain polynomial in x (leading exponent zero).
    static RadialExpr polynomial(XPoly p) {
        RadialExpr e{DimPoly()};
        e.add(0, std::move(p));
        return e;
    }

    const DimPoly& lead_exponent() const { return lead_; }
    const std::map<int, XPoly>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    int max_shift() const { return terms_.empty() ? -1 : terms_.rbegin()->first; }

    DimPoly exponent(int shift) const { return lead_ - DimPoly(shift); }

    XPoly term(int shift) const {
        auto it = terms_.find(shift);
        return it == terms_.end() ? XPoly() : it->second;
    }

    void add(int shift, const XPoly& p) {
        if (shift < 0) throw std::invalid_argument("RadialExpr: negative shift");
        if (p.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(shift, p);
        if (!inserted) {
            it->second += p;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    RadialExpr& operator+=(const RadialExpr& o) {
        require_compatible(o);
        for (const auto& [s, p] : o.terms_) add(s, p);
        return *this;
    }
    RadialExpr& operator-=(const RadialExpr& o) {
        require_compatible(o);
        for (const auto& [s, p] : o.terms_) add(s, -p);
        return *this;
    }
    friend RadialExpr operator+(RadialExpr a, const RadialExpr& b) { return a += b; }
    friend RadialExpr operator-(RadialExpr a, const RadialExpr& b) { return a -= b; }
    friend RadialExpr operator*(const RadialExpr& a, const DimPoly& s) {
        RadialExpr out(a.lead_);
        for (const auto& [sh, p] : a.terms_) out.add(sh, p * s);
        return out;
    }
    friend RadialExpr operator*(const DimPoly& s, const RadialExpr& a) { return a * s; }
    friend bool operator==(const RadialExpr& a, const RadialExpr& b) {
        return a.terms_ == b.terms_ && (a.terms_.empty() || a.lead_ == b.lead_);
    }

    /// Multiplies by base^j, absorbed as a shift by -j (requires shifts >= j).
    RadialExpr times_base_power(int j) const {
        RadialExpr out(lead_);
        for (const auto& [s, p] : terms_) {
            if (s - j < 0) throw std::invalid_argument("RadialExpr: shift would become negative");
            out.add(s - j, p);
        }
        return out;
    }

    /// sum_s p_s(x) * base^(S - s) as a polynomial in x and the parameter
    /// (the expression multiplied by base^(S - e0)).
    ClearedPoly cleared(int S) const {
        if (max_shift() > S) throw std::invalid_argument("RadialExpr: clearing shift below max shift");
        const ClearedPoly base = base_poly();
        ClearedPoly out;
        for (const auto& [s, p] : terms_) {
            ClearedPoly lifted = p.map([](const DimPoly& c) { return Poly<DimPoly>(c); });
            out += lifted * pow(base, static_cast<unsigned>(S - s));
        }
        return out;
    }

    /// base = x + sign * parameter as a ClearedPoly.
    static ClearedPoly base_poly() {
        return ClearedPoly{Poly<DimPoly>{DimPoly(), DimPoly(G::parameter_sign)}, Poly<DimPoly>(DimPoly(1))};
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [s, p] : terms_) {
            std::string t = "(" + render(p, G::variable, "n") + ")";
            const DimPoly e = exponent(s);
            if (!e.is_zero()) {
                t += std::string(" * (") + G::variable + (G::parameter_sign < 0 ? " - " : " + ") + G::parameter +
                     ")^(" + render(e) + ")";
            }
            out += out.empty() ? t : " + " + t;
        }
        return out;
    }

private:
    void require_compatible(const RadialExpr& o) {
        if (terms_.empty()) {
            lead_ = o.lead_;
            return;
        }
        if (!o.terms_.empty() && !(lead_ == o.lead_))
            throw std::invalid_argument("RadialExpr: mismatched leading exponents");
    }

    DimPoly lead_;
    std::map<int, XPoly> terms_;
};

using HypRadialExpr = RadialExpr<HyperbolicGeometry>;
using EuclidRadialExpr = RadialExpr<EuclideanGeometry>;

/// d/dx of the expression: p base^e -> p' base^e + e p base^(e-1).
template <class G>
RadialExpr<G> x_derivative(const RadialExpr<G>& f) {
    RadialExpr<G> out(f.lead_exponent());
    for (const auto& [s, p] : f.terms()) {
        out.add(s, p.derivative());
        const DimPoly e = f.exponent(s);
        if (!e.is_zero()) out.add(s + 1, p * e);
    }
    return out;
}

/// Radial Laplacian -[A f'' + B f'] on the power family. Each application
/// raises the maximal shift by at most 2.
template <class G>
RadialExpr<G> laplacian(const RadialExpr<G>& f) {
    const XPoly A = G::second_order();
    const XPoly B = G::first_order();
    RadialExpr<G> out(f.lead_exponent());
    for (const auto& [s, p] : f.terms()) {
        const XPoly dp = p.derivative();
        out.add(s, -(A * dp.derivative() + B * dp));
        const DimPoly e = f.exponent(s);
        if (e.is_zero()) continue;
        out.add(s + 1, -((A * dp * 2 + B * p) * e));
        out.add(s + 2, -(A * p * (e * (e - DimPoly(1)))));
    }
    return out;
}

inline HypRadialExpr hyp_laplacian(const HypRadialExpr& e) { return laplacian(e); }
inline EuclidRadialExpr euclid_laplacian(const EuclidRadialExpr& e) { return laplacian(e); }

template <class G>
RadialExpr<G> laplacian_power(RadialExpr<G> f, int m) {
    for (int i = 0; i < m; ++i) f = laplacian(f);
    return f;
}

/// d/dr (resp. d/drho) of a radial expression: sqrt(weight_squared) * d_dx,
/// where the weight is sinh r (resp. 2 rho). Squaring gives the odd-order
/// energy density weight_squared * d_dx^2 without leaving polynomial rings.
template <class G>
struct RadialDerivative {
    RadialExpr<G> d_dx;
    XPoly weight_squared;
};

template <class G>
RadialDerivative<G> radial_derivative(const RadialExpr<G>& f) {
    return {x_derivative(f), G::derivative_weight_squared()};
}

/// The unnormalized extremal base^(k - n/2). The omitted constant factor is
/// (1 - beta^2)^((n-2k)/4) on hyperbolic space and (2 tau)^(n/2 - k) on flat
/// space; `Normalization` evaluates it.
template <class G>
struct ExtremalExpr {
    int k;
    RadialExpr<G> expr;
};

template <class G>
ExtremalExpr<G> extremal_expr_for(int k) {
    if (k < 1) throw std::invalid_argument("extremal_expr: k must be >= 1");
    return {k, RadialExpr<G>::power_family(k)};
}

inline ExtremalExpr<HyperbolicGeometry> extremal_expr(int k) { return extremal_expr_for<HyperbolicGeometry>(k); }

/// Normalizing factor of the extremal at dimension n and parameter value
/// (beta for hyperbolic, tau^2 for flat).
inline double extremal_normalization(const HyperbolicGeometry&, double n, int k, double beta) {
    return std::exp((n - 2.0 * k) / 4.0 * std::log1p(-beta * beta));
}
inline double extremal_normalization(const EuclideanGeometry&, double n, int k, double tau2) {
    return std::exp((n / 2.0 - k) * std::log(2.0 * std::sqrt(tau2)));
}

/// Expression for lambda(param) * base^(e0 - S) in canonical form, where
/// `weight` is a polynomial in the parameter alone. The parameter is rewritten
/// as sign * (base - x), so the result lives in the same ring as f.
template <class G>
RadialExpr<G> parameter_weight_at_shift(const DimPoly& lead, const Poly<DimPoly>& weight, int S) {
    // param = sign * (base - x); expand weight(param) as sum_j q_j(x) base^j.
    RadialExpr<G> out(lead);
    const int sign = G::parameter_sign;
    for (int d = 0; d <= weight.degree(); ++d) {
        const DimPoly& w = weight.coeffs()[static_cast<std::size_t>(d)];
        if (w.is_zero()) continue;
        // (sign*(base - x))^d = sign^d * sum_j C(d,j) base^j (-x)^(d-j)
        Rational binom(1);
        for (int j = 0; j <= d; ++j) {
            if (j > 0) binom = binom * Rational(d - j + 1) / Rational(j);
            Rational c = binom;
            if ((d - j) % 2) c = -c;
            if (sign < 0 && d % 2) c = -c;
            if (j > S) throw std::invalid_argument("parameter_weight_at_shift: weight degree exceeds shift");
            out.add(S - j, XPoly::monomial(w * c, d - j));
        }
    }
    return out;
}

/// Numeric image of an expression at fixed n, evaluated as
/// sum_s p_s(x) * base^(e_s). The caller supplies base separately so that it
/// can be formed without cancellation.
template <class T>
class NumericRadial {
public:
    NumericRadial() = default;

    template <class G>
    NumericRadial(const RadialExpr<G>& e, const T& n) {
        for (const auto& [s, p] : e.terms()) {
            Term t;
            for (const auto& c : p.coeffs()) t.poly.push_back(numeric<T>(c, n));
            t.exponent = numeric<T>(e.exponent(s), n);
            terms_.push_back(std::move(t));
        }
    }

    T operator()(const T& x, const T& base) const {
        using std::log;
        using std::exp;
        T acc(0);
        const T log_base = log(base);
        for (const auto& t : terms_) {
            T p(0);
            for (auto it = t.poly.rbegin(); it != t.poly.rend(); ++it) p = p * x + *it;
            acc += p * exp(t.exponent * log_base);
        }
        return acc;
    }

    bool empty() const { return terms_.empty(); }

private:
    struct Term {
        std::vector<T> poly;
        T exponent;
    };
    std::vector<Term> terms_;
};

template <class T>
T evaluate_xpoly(const XPoly& p, const T& x, const T& n) {
    return numeric<T>(p, x, n);
}

}  // namespace hypsob
