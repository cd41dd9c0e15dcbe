#pragma once

#include "hypsob/poly.hpp"

#include <stdexcept>
#include <string>

namespace hypsob {

/// Element of the rational-function field Q(n). Kept reduced: numerator and
/// denominator coprime, denominator monic.
class RatFun {
public:
    RatFun() : den_(1) {}
    RatFun(int v) : num_(v), den_(1) {}
    RatFun(const Rational& v) : num_(v), den_(1) {}
    RatFun(DimPoly num) : num_(std::move(num)), den_(1) {}
    RatFun(DimPoly num, DimPoly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("RatFun: zero denominator");
        normalize();
    }

    const DimPoly& num() const { return num_; }
    const DimPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    /// The numerator, after checking that the denominator is 1.
    const DimPoly& as_polynomial() const {
        if (!is_polynomial()) throw std::logic_error("RatFun: not a polynomial: " + to_string());
        return num_;
    }

    Rational operator()(const Rational& x) const { return num_(x) / den_(x); }

    RatFun operator-() const { return RatFun(-num_, den_, Reduced{}); }
    friend RatFun operator+(const RatFun& a, const RatFun& b) {
        if (a.den_ == b.den_) return RatFun(a.num_ + b.num_, a.den_);
        return RatFun(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFun operator-(const RatFun& a, const RatFun& b) { return a + (-b); }
    friend RatFun operator*(const RatFun& a, const RatFun& b) {
        return RatFun(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFun operator/(const RatFun& a, const RatFun& b) {
        if (b.is_zero()) throw std::domain_error("RatFun: division by zero");
        return RatFun(a.num_ * b.den_, a.den_ * b.num_);
    }
    RatFun& operator+=(const RatFun& o) { return *this = *this + o; }
    RatFun& operator-=(const RatFun& o) { return *this = *this - o; }
    RatFun& operator*=(const RatFun& o) { return *this = *this * o; }

    friend bool operator==(const RatFun& a, const RatFun& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

    std::string to_string() const {
        if (is_polynomial()) return render(num_);
        return "(" + render(num_) + ")/(" + render(den_) + ")";
    }

private:
    struct Reduced {};
    RatFun(DimPoly num, DimPoly den, Reduced) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (num_.is_zero()) {
            den_ = DimPoly(1);
            return;
        }
        DimPoly g = gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = exact_divide(num_, g);
            den_ = exact_divide(den_, g);
        }
        Rational lead = den_.leading();
        if (!lead.is_one()) {
            Rational inv = Rational(1) / lead;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    DimPoly num_;
    DimPoly den_;
};

inline bool is_zero(const RatFun& r) { return r.is_zero(); }

}  // namespace hypsob
