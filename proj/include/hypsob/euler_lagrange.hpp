#pragma once

#include "hypsob/errors.hpp"
#include "hypsob/interpolate.hpp"
#include "hypsob/linear_solve.hpp"
#include "hypsob/multi_poly.hpp"
#include "hypsob/operator.hpp"
#include "hypsob/radial_expr.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace hypsob {

/// Solution of the coefficient system for P = L^k + sum_{m<k} a_m L^m with
/// P psi = b (1 - beta^2)^k (c - beta)^(-k - n/2), psi = (c - beta)^(k - n/2).
struct ElSolution {
    int k = 0;
    std::vector<RatFun> a;  // a_0 ... a_{k-1}
    RatFun b;
    std::size_t equations = 0;
    std::size_t surplus_equations = 0;

    /// True when every unknown is a polynomial in n.
    bool polynomial() const {
        for (const auto& x : a)
            if (!x.is_polynomial()) return false;
        return b.is_polynomial();
    }
};

/// (1 - p^2)^k as a polynomial in the parameter p.
inline Poly<DimPoly> one_minus_square_power(int k) {
    return pow(Poly<DimPoly>{DimPoly(1), DimPoly(), DimPoly(-1)}, static_cast<unsigned>(k));
}

/// Images psi, L psi, ..., L^k psi of the hyperbolic extremal.
inline std::vector<HypRadialExpr> extremal_laplacian_images(int k) {
    std::vector<HypRadialExpr> out;
    out.push_back(extremal_expr(k).expr);
    for (int m = 1; m <= k; ++m) out.push_back(hyp_laplacian(out.back()));
    return out;
}

namespace detail {

/// Cleared images flattened to polynomials in (c, beta, n). With a fixed beta
/// the parameter is substituted so that only powers of c are equated.
inline std::vector<MultiPoly> el_columns(int k, const std::optional<Rational>& beta) {
    const auto images = extremal_laplacian_images(k);
    std::vector<ClearedPoly> cleared;
    for (const auto& img : images) cleared.push_back(img.cleared(2 * k));
    cleared.push_back(ClearedPoly(one_minus_square_power(k)));

    std::vector<MultiPoly> out;
    for (const auto& cp : cleared) {
        if (beta) {
            XPoly sub = cp.map([&](const Poly<DimPoly>& inner) { return inner(DimPoly(*beta)); });
            out.push_back(to_multi(sub, Exponents{}, Symbol::c));
        } else {
            out.push_back(to_multi(cp, Exponents{}, Symbol::c, Symbol::beta));
        }
    }
    return out;
}

inline std::vector<Exponents> monomial_keys(const std::vector<MultiPoly>& cols) {
    std::set<Exponents> keys;
    for (const auto& col : cols) {
        for (const auto& [e, c] : col.terms()) {
            Exponents k = e;
            k[static_cast<std::size_t>(Symbol::n)] = 0;
            keys.insert(k);
        }
    }
    return {keys.begin(), keys.end()};
}

/// One row per (c, beta) monomial: sum_m a_m [L^m] - b [W] = -[L^k].
inline void el_system(int k, const std::optional<Rational>& beta, Matrix<DimPoly>& rows,
                      std::vector<DimPoly>& rhs) {
    const auto cols = el_columns(k, beta);
    const auto& weight = cols[static_cast<std::size_t>(k) + 1];
    for (const auto& key : monomial_keys(cols)) {
        std::vector<DimPoly> row;
        for (int m = 0; m < k; ++m) row.push_back(cols[static_cast<std::size_t>(m)].coefficient_in_n(key));
        row.push_back(-weight.coefficient_in_n(key));
        rows.push_back(std::move(row));
        rhs.push_back(-cols[static_cast<std::size_t>(k)].coefficient_in_n(key));
    }
}

}  // namespace detail

/// Solves the coefficient system exactly over Q(n). Without `beta` the
/// equations equate monomials in (c, beta); with it, powers of c at that beta.
/// Throws SurplusNonzero if an equation outside the pivot subsystem fails.
inline ElSolution el_solve(int k, std::optional<Rational> beta = std::nullopt) {
    if (k < 1) throw std::invalid_argument("el_solve: k must be >= 1");
    Matrix<DimPoly> rows;
    std::vector<DimPoly> rhs;
    detail::el_system(k, beta, rows, rhs);

    Matrix<RatFun> a;
    std::vector<RatFun> r;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        std::vector<RatFun> row;
        for (const auto& e : rows[i]) row.emplace_back(e);
        a.push_back(std::move(row));
        r.emplace_back(rhs[i]);
    }
    LinearSolution sol = solve_linear_exact(a, r);
    for (std::size_t i = 0; i < sol.surplus_residuals.size(); ++i)
        if (!sol.surplus_residuals[i].is_zero())
            throw SurplusNonzero("equation " + std::to_string(sol.surplus_rows[i]) +
                                 " leaves residual " + sol.surplus_residuals[i].to_string());

    ElSolution out;
    out.k = k;
    out.a.assign(sol.x.begin(), sol.x.begin() + k);
    out.b = sol.x.back();
    out.equations = rows.size();
    out.surplus_equations = sol.surplus_rows.size();
    return out;
}

/// Independent route: solve the system over Q at integer dimensions and
/// interpolate each unknown with degree bound 2k. Returns a_0..a_{k-1}, b.
inline std::vector<DimPoly> el_solve_interpolated(int k) {
    if (k < 1) throw std::invalid_argument("el_solve_interpolated: k must be >= 1");
    Matrix<DimPoly> rows;
    std::vector<DimPoly> rhs;
    detail::el_system(k, std::nullopt, rows, rhs);

    const int bound = 2 * k;
    const int samples = bound + 2;  // one more than needed, so the bound is tested
    std::vector<std::vector<std::pair<Rational, Rational>>> points(static_cast<std::size_t>(k) + 1);
    for (int i = 0, n = 2 * k + 1; i < samples; ++n) {
        const Rational nv(n);
        Matrix<Rational> an;
        std::vector<Rational> bn;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            std::vector<Rational> row;
            for (const auto& e : rows[r]) row.push_back(e(nv));
            an.push_back(std::move(row));
            bn.push_back(rhs[r](nv));
        }
        std::vector<Rational> x;
        try {
            x = solve_rational(an, bn);
        } catch (const SingularSystem&) {
            continue;
        }
        for (std::size_t j = 0; j < x.size(); ++j) points[j].emplace_back(nv, x[j]);
        ++i;
    }
    std::vector<DimPoly> out;
    for (const auto& pts : points) out.push_back(interpolate(pts, bound));
    return out;
}

/// sum_m coeffs[m] L^m psi - b (1 - beta^2)^k (c - beta)^(-k - n/2), in the
/// canonical (c, c - beta) representation. `coeffs` has k + 1 entries.
inline HypRadialExpr el_residual(int k, const std::vector<DimPoly>& coeffs, const DimPoly& b) {
    if (coeffs.size() != static_cast<std::size_t>(k) + 1)
        throw std::invalid_argument("el_residual: expected k + 1 coefficients");
    const auto images = extremal_laplacian_images(k);
    HypRadialExpr res(images.front().lead_exponent());
    for (int m = 0; m <= k; ++m) res += images[static_cast<std::size_t>(m)] * coeffs[static_cast<std::size_t>(m)];
    res -= parameter_weight_at_shift<HyperbolicGeometry>(res.lead_exponent(), one_minus_square_power(k), 2 * k) * b;
    return res;
}

/// Description of the first surviving monomial of a residual after clearing.
template <class G>
std::string offending_monomial(const RadialExpr<G>& res) {
    const int S = res.max_shift();
    const MultiPoly flat = to_multi(res.cleared(S), Exponents{}, G::variable_symbol, G::parameter_symbol);
    if (flat.is_zero()) return "";
    const auto& [e, c] = *flat.terms().begin();
    MultiPoly single;
    single.add_term(e, c);
    return single.to_string();
}

/// Residual built from P_k and b_k; throws NonzeroResidual unless it vanishes.
inline HypRadialExpr el_residual(int k) {
    HypRadialExpr res = el_residual(k, standard_operator(k).coeffs(), b_constant(k));
    if (!res.is_zero()) throw NonzeroResidual("k=" + std::to_string(k) + ": " + offending_monomial(res));
    return res;
}

/// L^k (tau^2 + rho^2)^(k - n/2) - b (4 tau^2)^k (tau^2 + rho^2)^(-k - n/2).
inline EuclidRadialExpr euclid_el_residual(int k, const DimPoly& b) {
    if (k < 1) throw std::invalid_argument("euclid_el_residual: k must be >= 1");
    EuclidRadialExpr res = laplacian_power(EuclidRadialExpr::power_family(k), k);
    const Poly<DimPoly> weight =
        Poly<DimPoly>::monomial(DimPoly(pow(Rational(4), static_cast<unsigned>(k))), k);
    res -= parameter_weight_at_shift<EuclideanGeometry>(res.lead_exponent(), weight, 2 * k) * b;
    return res;
}

inline EuclidRadialExpr euclid_el_residual(int k) {
    EuclidRadialExpr res = euclid_el_residual(k, b_constant(k));
    if (!res.is_zero()) throw NonzeroResidual("k=" + std::to_string(k) + ": " + offending_monomial(res));
    return res;
}

}  // namespace hypsob
