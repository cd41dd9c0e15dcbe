#pragma once

#include "hypsob/poly.hpp"
#include "hypsob/rational.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <string>

namespace hypsob {

/// Symbols that may appear in a MultiPoly.
enum class Symbol : std::size_t { n = 0, beta = 1, c = 2, tau2 = 3, rho2 = 4 };

inline constexpr std::size_t kSymbolCount = 5;

inline const char* symbol_name(Symbol s) {
    switch (s) {
        case Symbol::n: return "n";
        case Symbol::beta: return "beta";
        case Symbol::c: return "c";
        case Symbol::tau2: return "tau2";
        case Symbol::rho2: return "rho2";
    }
    return "?";
}

using Exponents = std::array<int, kSymbolCount>;

/// Sparse multivariate polynomial over the rationals. Zero coefficients are
/// never stored.
class MultiPoly {
public:
    MultiPoly() = default;
    explicit MultiPoly(const Rational& constant) { add_term({}, constant); }

    static MultiPoly symbol(Symbol s) {
        Exponents e{};
        e[static_cast<std::size_t>(s)] = 1;
        MultiPoly p;
        p.add_term(e, Rational(1));
        return p;
    }

    const std::map<Exponents, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    Rational coeff(const Exponents& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Rational() : it->second;
    }

    void add_term(const Exponents& e, const Rational& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [e, c] : r.terms_) c = -c;
        return r;
    }
    MultiPoly& operator+=(const MultiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPoly& operator-=(const MultiPoly& o) {
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly out;
        for (const auto& [ea, ca] : a.terms_) {
            for (const auto& [eb, cb] : b.terms_) {
                Exponents e;
                for (std::size_t i = 0; i < kSymbolCount; ++i) e[i] = ea[i] + eb[i];
                out.add_term(e, ca * cb);
            }
        }
        return out;
    }
    friend MultiPoly operator*(MultiPoly a, const Rational& s) {
        if (s.is_zero()) return MultiPoly();
        for (auto& [e, c] : a.terms_) c *= s;
        return a;
    }
    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

    /// Exact evaluation at a point given as one value per symbol.
    Rational evaluate(const std::array<Rational, kSymbolCount>& at) const {
        Rational acc;
        for (const auto& [e, c] : terms_) {
            Rational t = c;
            for (std::size_t i = 0; i < kSymbolCount; ++i)
                if (e[i]) t *= pow(at[i], static_cast<unsigned>(e[i]));
            acc += t;
        }
        return acc;
    }

    /// Collects, for a monomial in every symbol except n, its coefficient as a
    /// polynomial in n. The n entry of `key` is ignored.
    DimPoly coefficient_in_n(Exponents key) const {
        key[static_cast<std::size_t>(Symbol::n)] = 0;
        std::vector<Rational> out;
        for (const auto& [e, c] : terms_) {
            Exponents stripped = e;
            stripped[static_cast<std::size_t>(Symbol::n)] = 0;
            if (stripped != key) continue;
            const auto d = static_cast<std::size_t>(e[static_cast<std::size_t>(Symbol::n)]);
            if (out.size() <= d) out.resize(d + 1);
            out[d] += c;
        }
        return DimPoly(std::move(out));
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (const auto& [e, c] : terms_) {
            std::string t = c.to_string();
            for (std::size_t i = 0; i < kSymbolCount; ++i) {
                if (!e[i]) continue;
                t += std::string("*") + symbol_name(static_cast<Symbol>(i));
                if (e[i] > 1) t += "^" + std::to_string(e[i]);
            }
            out += out.empty() ? t : " + " + t;
        }
        return out;
    }

private:
    std::map<Exponents, Rational> terms_;
};

inline MultiPoly to_multi(const DimPoly& p, Exponents base = {}) {
    MultiPoly out;
    for (int i = 0; i <= p.degree(); ++i) {
        Exponents e = base;
        e[static_cast<std::size_t>(Symbol::n)] += i;
        out.add_term(e, p.coeff(i));
    }
    return out;
}

/// Flattens a recursive polynomial whose innermost coefficients are DimPoly.
/// `outer` lists the symbols of the nesting levels from the outermost down.
template <class C, class... Syms>
MultiPoly to_multi(const Poly<C>& p, Exponents base, Symbol outer, Syms... inner) {
    MultiPoly out;
    for (int i = 0; i <= p.degree(); ++i) {
        Exponents e = base;
        e[static_cast<std::size_t>(outer)] += i;
        out += to_multi(p.coeffs()[static_cast<std::size_t>(i)], e, inner...);
    }
    return out;
}

}  // namespace hypsob
