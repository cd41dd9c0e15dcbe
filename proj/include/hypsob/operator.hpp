#pragma once

#include "hypsob/errors.hpp"
#include "hypsob/poly.hpp"
#include "hypsob/rational.hpp"

#include <string>
#include <vector>

namespace hypsob {

/// P = sum_m coeff[m] * L^m, a polynomial in an abstract Laplacian symbol L
/// whose coefficients are polynomials in the dimension n. The standard
/// operators are monic of order k.
class OperatorPoly {
public:
    OperatorPoly() : coeffs_{DimPoly(1)} {}
    explicit OperatorPoly(std::vector<DimPoly> coeffs) : coeffs_(std::move(coeffs)) {
        while (coeffs_.size() > 1 && coeffs_.back().is_zero()) coeffs_.pop_back();
        if (coeffs_.empty()) coeffs_.push_back(DimPoly());
    }

    int order() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<DimPoly>& coeffs() const { return coeffs_; }
    bool is_monic() const { return coeffs_.back() == DimPoly(1); }

    const DimPoly& coefficient(int m) const {
        if (m < 0 || m > order())
            throw IndexOutOfRange("coefficient index " + std::to_string(m) + " outside [0, " +
                                  std::to_string(order()) + "]");
        return coeffs_[static_cast<std::size_t>(m)];
    }

    /// Composition of operators; the coefficients are constants on the
    /// manifold, so this is plain polynomial multiplication in L.
    friend OperatorPoly operator*(const OperatorPoly& a, const OperatorPoly& b) {
        std::vector<DimPoly> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        return OperatorPoly(std::move(out));
    }
    friend bool operator==(const OperatorPoly& a, const OperatorPoly& b) { return a.coeffs_ == b.coeffs_; }

private:
    std::vector<DimPoly> coeffs_;
};

/// Zeroth coefficient of the first standard operator, -n(n-2)/4.
inline DimPoly yamabe_shift() {
    return DimPoly{Rational(0), Rational(1, 2), Rational(-1, 4)};
}

/// The linear factor P_1 + j(j-1).
inline OperatorPoly shifted_first_operator(int j) {
    return OperatorPoly({yamabe_shift() + DimPoly(Rational(j * (j - 1))), DimPoly(1)});
}

/// k-th standard operator, P_1 (P_1 + 2) (P_1 + 6) ... (P_1 + k(k-1)).
inline OperatorPoly standard_operator(int k) {
    if (k < 1) throw std::invalid_argument("standard_operator: k must be >= 1");
    OperatorPoly p = shifted_first_operator(1);
    for (int j = 2; j <= k; ++j) p = p * shifted_first_operator(j);
    return p;
}

inline DimPoly coefficient(const OperatorPoly& op, int m) { return op.coefficient(m); }

/// b_k(n) = n (n-2k) prod_{j=1}^{k-1} (n^2 - (2j)^2) / 2^{2k}.
inline DimPoly b_constant(int k) {
    if (k < 1) throw std::invalid_argument("b_constant: k must be >= 1");
    const DimPoly n = dim_symbol();
    DimPoly p = n * (n - DimPoly(2 * k));
    for (int j = 1; j < k; ++j) p = p * (n * n - DimPoly(4 * j * j));
    return p * (Rational(1) / pow(Rational(4), static_cast<unsigned>(k)));
}

/// (-1)^k a_{k0} == b_k as polynomials in n.
inline bool verify_a0_identity(int k) {
    DimPoly a0 = standard_operator(k).coefficient(0);
    if (k % 2) a0 = -a0;
    return (a0 - b_constant(k)).is_zero();
}

inline std::vector<Rational> instantiate(const OperatorPoly& op, const Rational& n_value) {
    std::vector<Rational> out;
    out.reserve(op.coeffs().size());
    for (const auto& c : op.coeffs()) out.push_back(c(n_value));
    return out;
}

/// Conventional name of coefficient m of P_k, e.g. "a_{32}".
inline std::string coefficient_name(int k, int m) {
    return "a_{" + std::to_string(k) + std::to_string(m) + "}";
}

}  // namespace hypsob
