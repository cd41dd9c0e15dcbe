#pragma once

#include "hypsob/errors.hpp"
#include "hypsob/poly.hpp"
#include "hypsob/rat_fun.hpp"
#include "hypsob/rational.hpp"

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace hypsob {

template <class T>
using Matrix = std::vector<std::vector<T>>;

inline Rational exact_quotient(const Rational& a, const Rational& b) { return a / b; }
inline DimPoly exact_quotient(const DimPoly& a, const DimPoly& b) { return exact_divide(a, b); }

inline int pivot_weight(const Rational&) { return 0; }
inline int pivot_weight(const DimPoly& p) { return p.degree(); }

/// Row-echelon form produced by fraction-free elimination of an augmented
/// system [A | b] with `unknowns` columns in A.
template <class Ring>
struct Echelon {
    Matrix<Ring> rows;                       // pivot rows, upper triangular in the unknown block
    std::vector<std::size_t> pivot_rows;     // original index of each pivot row
    std::vector<std::size_t> surplus_rows;   // original indices of the remaining rows
    std::vector<Ring> surplus_entries;       // reduced right-hand side of each surplus row
};

/// Bareiss elimination over an integral domain. Each intermediate entry is a
/// minor of the input, so the division by the previous pivot is exact. Pivots
/// are chosen greedily by smallest weight. Throws SingularSystem when a column
/// has no usable pivot.
template <class Ring>
Echelon<Ring> fraction_free_eliminate(Matrix<Ring> m, std::size_t unknowns) {
    const std::size_t n_rows = m.size();
    if (n_rows < unknowns) throw SingularSystem("fewer equations than unknowns");
    std::vector<std::size_t> order(n_rows);
    for (std::size_t i = 0; i < n_rows; ++i) order[i] = i;

    Ring prev(1);
    for (std::size_t col = 0; col < unknowns; ++col) {
        std::size_t best = n_rows;
        int best_w = std::numeric_limits<int>::max();
        for (std::size_t i = col; i < n_rows; ++i) {
            if (is_zero(m[i][col])) continue;
            int w = pivot_weight(m[i][col]);
            if (w < best_w) {
                best = i;
                best_w = w;
            }
        }
        if (best == n_rows) throw SingularSystem("no pivot in column " + std::to_string(col));
        std::swap(m[col], m[best]);
        std::swap(order[col], order[best]);

        const Ring& piv = m[col][col];
        for (std::size_t i = col + 1; i < n_rows; ++i) {
            const Ring lead = m[i][col];
            for (std::size_t j = col + 1; j <= unknowns; ++j) {
                Ring v = piv * m[i][j];
                if (!is_zero(lead)) v -= lead * m[col][j];
                m[i][j] = exact_quotient(v, prev);
            }
            m[i][col] = Ring();
        }
        prev = m[col][col];
    }

    Echelon<Ring> out;
    for (std::size_t i = 0; i < n_rows; ++i) {
        if (i < unknowns) {
            out.rows.push_back(std::move(m[i]));
            out.pivot_rows.push_back(order[i]);
        } else {
            out.surplus_rows.push_back(order[i]);
            out.surplus_entries.push_back(std::move(m[i][unknowns]));
        }
    }
    return out;
}

/// Back substitution on the square upper-triangular block, carried out in the
/// field `Field` into which `Ring` embeds.
template <class Field, class Ring>
std::vector<Field> back_substitute(const Matrix<Ring>& upper, std::size_t unknowns) {
    std::vector<Field> x(unknowns);
    for (std::size_t jj = unknowns; jj-- > 0;) {
        Field acc(upper[jj][unknowns]);
        for (std::size_t l = jj + 1; l < unknowns; ++l) acc -= Field(upper[jj][l]) * x[l];
        x[jj] = acc / Field(upper[jj][jj]);
    }
    return x;
}

struct LinearSolution {
    std::vector<RatFun> x;
    std::vector<std::size_t> pivot_rows;
    std::vector<std::size_t> surplus_rows;
    /// A_i x - b_i for every surplus row i, evaluated directly on the input.
    std::vector<RatFun> surplus_residuals;

    bool surplus_vanishes() const {
        for (const auto& r : surplus_residuals)
            if (!r.is_zero()) return false;
        return true;
    }
};

namespace detail {

inline DimPoly lcm(const DimPoly& a, const DimPoly& b) { return exact_divide(a * b, gcd(a, b)); }

inline mpz_class denominator_lcm(const DimPoly& p) {
    mpz_class l = 1;
    for (const auto& c : p.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.den().get_mpz_t());
    return l;
}

}  // namespace detail

/// Solves an (over)determined system over Q(n). Rows are cleared to
/// polynomial entries with integer coefficients, eliminated fraction-free over
/// Q[n], and back-substituted over Q(n). The surplus rows are then checked
/// against the original input.
inline LinearSolution solve_linear_exact(const Matrix<RatFun>& a, const std::vector<RatFun>& rhs) {
    if (a.size() != rhs.size()) throw std::invalid_argument("solve_linear_exact: row count mismatch");
    if (a.empty()) throw SingularSystem("empty system");
    const std::size_t unknowns = a.front().size();

    Matrix<DimPoly> cleared;
    cleared.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].size() != unknowns) throw std::invalid_argument("solve_linear_exact: ragged matrix");
        DimPoly l(1);
        for (const auto& e : a[i]) l = detail::lcm(l, e.den());
        l = detail::lcm(l, rhs[i].den());
        std::vector<DimPoly> row;
        row.reserve(unknowns + 1);
        for (const auto& e : a[i]) row.push_back(e.num() * exact_divide(l, e.den()));
        row.push_back(rhs[i].num() * exact_divide(l, rhs[i].den()));

        mpz_class scale = 1;
        for (const auto& e : row) {
            mpz_class d = detail::denominator_lcm(e);
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), d.get_mpz_t());
        }
        if (scale != 1) {
            Rational s{scale};
            for (auto& e : row) e = e * s;
        }
        cleared.push_back(std::move(row));
    }

    Echelon<DimPoly> ech = fraction_free_eliminate(std::move(cleared), unknowns);

    LinearSolution out;
    out.x = back_substitute<RatFun>(ech.rows, unknowns);
    out.pivot_rows = ech.pivot_rows;
    out.surplus_rows = ech.surplus_rows;
    for (std::size_t i : ech.surplus_rows) {
        RatFun r = -rhs[i];
        for (std::size_t j = 0; j < unknowns; ++j)
            if (!a[i][j].is_zero() && !out.x[j].is_zero()) r += a[i][j] * out.x[j];
        out.surplus_residuals.push_back(std::move(r));
    }
    return out;
}

/// Exact solve over Q; surplus rows must be consistent or SurplusNonzero is
/// thrown.
inline std::vector<Rational> solve_rational(const Matrix<Rational>& a, const std::vector<Rational>& rhs) {
    if (a.size() != rhs.size()) throw std::invalid_argument("solve_rational: row count mismatch");
    if (a.empty()) throw SingularSystem("empty system");
    const std::size_t unknowns = a.front().size();
    Matrix<Rational> aug = a;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
    auto ech = fraction_free_eliminate(std::move(aug), unknowns);
    for (std::size_t i = 0; i < ech.surplus_entries.size(); ++i)
        if (!ech.surplus_entries[i].is_zero())
            throw SurplusNonzero("row " + std::to_string(ech.surplus_rows[i]) + " is inconsistent");
    return back_substitute<Rational>(ech.rows, unknowns);
}

}  // namespace hypsob
