#pragma once

#include "hypsob/rational.hpp"

#include <algorithm>
#include <cctype>
#include <concepts>
#include <cstddef>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace hypsob {

template <class C>
class Poly;

inline bool is_zero(const Rational& r) { return r.is_zero(); }

template <class C>
bool is_zero(const Poly<C>& p) { return p.is_zero(); }

/// Dense univariate polynomial with coefficients in a commutative ring `C`,
/// stored in ascending degree with trailing zeros trimmed. Nesting
/// (`Poly<Poly<Rational>>`) gives multivariate polynomials in recursive form.
template <class C>
class Poly {
public:
    using coeff_type = C;

    Poly() = default;
    explicit Poly(int v) : Poly(C(v)) {}
    explicit Poly(C c) {
        if (!hypsob::is_zero(c)) c_.push_back(std::move(c));
    }
    explicit Poly(std::vector<C> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(std::initializer_list<C> coeffs) : c_(coeffs) { trim(); }

    static Poly monomial(C c, int degree) {
        if (hypsob::is_zero(c)) return Poly();
        std::vector<C> v(static_cast<std::size_t>(degree) + 1);
        v.back() = std::move(c);
        return Poly(std::move(v));
    }
    static Poly variable() { return monomial(C(1), 1); }

    /// Degree, or -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<C>& coeffs() const { return c_; }

    C coeff(int i) const {
        if (i < 0 || i > degree()) return C();
        return c_[static_cast<std::size_t>(i)];
    }
    const C& leading() const {
        if (c_.empty()) throw std::logic_error("Poly: leading coefficient of zero polynomial");
        return c_.back();
    }

    Poly operator-() const {
        Poly r = *this;
        for (auto& c : r.c_) c = -c;
        return r;
    }

    Poly& operator+=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        trim();
        return *this;
    }
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<C> out(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (hypsob::is_zero(a.c_[i])) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
        }
        return Poly(std::move(out));
    }
    friend Poly operator*(Poly a, const C& s) {
        if (hypsob::is_zero(s)) return Poly();
        for (auto& c : a.c_) c *= s;
        a.trim();
        return a;
    }
    friend Poly operator*(const C& s, Poly a) { return std::move(a) * s; }
    friend Poly operator*(Poly a, int s) { return std::move(a) * C(s); }
    friend Poly operator*(int s, Poly a) { return std::move(a) * C(s); }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    Poly derivative() const {
        if (c_.size() <= 1) return Poly();
        std::vector<C> out(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<int>(i);
        return Poly(std::move(out));
    }

    /// Horner evaluation at a point of the coefficient ring.
    C operator()(const C& x) const {
        C acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    template <class F>
    auto map(F&& f) const -> Poly<std::decay_t<std::invoke_result_t<F, const C&>>> {
        using D = std::decay_t<std::invoke_result_t<F, const C&>>;
        std::vector<D> out;
        out.reserve(c_.size());
        for (const auto& c : c_) out.push_back(f(c));
        return Poly<D>(std::move(out));
    }

private:
    void trim() {
        while (!c_.empty() && hypsob::is_zero(c_.back())) c_.pop_back();
    }

    std::vector<C> c_;
};

template <class C>
Poly<C> pow(const Poly<C>& base, unsigned exponent) {
    Poly<C> result(1);
    Poly<C> b = base;
    while (exponent) {
        if (exponent & 1u) result = result * b;
        exponent >>= 1u;
        if (exponent) b = b * b;
    }
    return result;
}

/// Polynomial in the dimension symbol n over the rationals.
using DimPoly = Poly<Rational>;

inline DimPoly dim_symbol() { return DimPoly::variable(); }

// ---------------------------------------------------------------------------
// Scalar evaluation of (possibly nested) polynomials. The outermost variable
// comes first: for Poly<Poly<DimPoly>> call numeric(p, x, y, n).

template <class T>
T to_scalar(const Rational& r) {
    if constexpr (std::is_same_v<T, double>) {
        return r.to_double();
    } else {
        return T(r.num().get_str()) / T(r.den().get_str());
    }
}

template <class T>
T numeric(const Rational& r) { return to_scalar<T>(r); }

template <class T, class C, class... Rest>
T numeric(const Poly<C>& p, const T& x, const Rest&... rest) {
    T acc(0);
    const auto& cs = p.coeffs();
    for (auto it = cs.rbegin(); it != cs.rend(); ++it) acc = acc * x + numeric<T>(*it, rest...);
    return acc;
}

// ---------------------------------------------------------------------------
// Field operations on DimPoly.

struct DivMod {
    DimPoly quotient;
    DimPoly remainder;
};

inline DivMod divmod(const DimPoly& a, const DimPoly& b) {
    if (b.is_zero()) throw std::domain_error("DimPoly: division by zero polynomial");
    std::vector<Rational> rem = a.coeffs();
    const int db = b.degree();
    const Rational lead_inv = Rational(1) / b.leading();
    std::vector<Rational> quot(a.degree() >= db ? static_cast<std::size_t>(a.degree() - db + 1) : 0);
    for (int i = a.degree(); i >= db; --i) {
        const Rational& top = rem[static_cast<std::size_t>(i)];
        if (top.is_zero()) continue;
        Rational f = top * lead_inv;
        for (int j = 0; j <= db; ++j) rem[static_cast<std::size_t>(i - db + j)] -= f * b.coeff(j);
        quot[static_cast<std::size_t>(i - db)] = std::move(f);
    }
    return {DimPoly(std::move(quot)), DimPoly(std::move(rem))};
}

/// Division that must leave no remainder.
inline DimPoly exact_divide(const DimPoly& a, const DimPoly& b) {
    auto qr = divmod(a, b);
    if (!qr.remainder.is_zero()) throw std::logic_error("DimPoly: inexact division");
    return std::move(qr.quotient);
}

inline DimPoly monic(const DimPoly& p) {
    if (p.is_zero()) return p;
    return p * (Rational(1) / p.leading());
}

/// Monic greatest common divisor (zero iff both inputs are zero).
inline DimPoly gcd(DimPoly a, DimPoly b) {
    while (!b.is_zero()) {
        DimPoly r = divmod(a, b).remainder;
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Exact substitution n -> value.
inline Rational poly_eval(const DimPoly& p, const Rational& x) { return p(x); }

// ---------------------------------------------------------------------------
// Text forms.

/// Canonical serialization: ascending coefficient list, e.g. "[0, -1/2, -1/2]".
inline std::string serialize(const DimPoly& p) {
    if (p.is_zero()) return "[0]";
    std::string out = "[";
    for (int i = 0; i <= p.degree(); ++i) {
        if (i) out += ", ";
        out += p.coeff(i).to_string();
    }
    return out + "]";
}

/// Inverse of serialize().
inline DimPoly deserialize_dim_poly(const std::string& text) {
    auto l = text.find('['), r = text.rfind(']');
    if (l == std::string::npos || r == std::string::npos || r < l)
        throw std::invalid_argument("DimPoly: expected bracketed list");
    std::vector<Rational> coeffs;
    std::stringstream ss(text.substr(l + 1, r - l - 1));
    std::string item;
    while (std::getline(ss, item, ',')) {
        item.erase(std::remove_if(item.begin(), item.end(), [](unsigned char ch) { return std::isspace(ch); }),
                   item.end());
        if (!item.empty()) coeffs.push_back(Rational::parse(item));
    }
    return DimPoly(std::move(coeffs));
}

namespace detail {

inline std::string render_monomial(const std::string& coeff_text, bool coeff_is_unit, const std::string& var,
                                   int power) {
    if (power == 0) return coeff_text;
    std::string v = power == 1 ? var : var + "^" + std::to_string(power);
    return coeff_is_unit ? v : coeff_text + " " + v;
}

}  // namespace detail

/// Human-readable rendering in descending powers, e.g. "-3/4 n^2 + 3/2 n + 8".
inline std::string render(const DimPoly& p, const std::string& var = "n") {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const Rational& c = p.coeff(i);
        if (c.is_zero()) continue;
        const bool neg = c.sign() < 0;
        const Rational mag = neg ? -c : c;
        std::string term = detail::render_monomial(mag.to_string(), mag.is_one(), var, i);
        if (out.empty()) {
            out = neg ? "-" + term : term;
        } else {
            out += neg ? " - " : " + ";
            out += term;
        }
    }
    return out;
}

/// Rendering of nested polynomials: render(p, "c", "beta", "n").
template <class C, class... Vars>
std::string render(const Poly<C>& p, const std::string& var, const Vars&... inner) {
    static_assert(sizeof...(Vars) > 0);
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        const C& c = p.coeffs()[static_cast<std::size_t>(i)];
        if (is_zero(c)) continue;
        std::string ct = render(c, inner...);
        const bool single = c.degree() == 0;
        if (!single) ct = "(" + ct + ")";
        const bool unit = single && ct == "1";
        std::string term = detail::render_monomial(ct, unit, var, i);
        out += out.empty() ? term : " + " + term;
    }
    return out;
}

}  // namespace hypsob
