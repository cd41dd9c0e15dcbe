#pragma once

#include "hypsob/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

namespace hypsob {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int subdivisions = 0;
    /// Fitted local power alpha with f ~ dist^alpha at the lower and upper
    /// endpoints; +inf when the integrand vanishes identically there.
    std::pair<double, double> endpoint_exponents{0.0, 0.0};
    bool converged = false;
    bool divergent = false;
};

struct QuadratureOptions {
    double rel_tol = 1e-10;
    double abs_tol = 0.0;
    int max_subdivisions = 4000;
    bool diagnose_endpoints = true;
};

/// Fitted exponents at or below this are non-integrable.
inline constexpr double kDivergentExponent = -1.0 + 1e-3;

namespace detail {

inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

/// 15-point Kronrod estimate with the embedded 7-point Gauss rule and the
/// QUADPACK error heuristic.
template <class F>
Segment kronrod15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double resk = fc * kWgk[7];
    double resg = fc * kWg[3];
    double resabs = std::abs(resk);
    std::array<double, 7> f1{}, f2{};
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[static_cast<std::size_t>(j)];
        f1[static_cast<std::size_t>(j)] = f(c - dx);
        f2[static_cast<std::size_t>(j)] = f(c + dx);
        const double s = f1[static_cast<std::size_t>(j)] + f2[static_cast<std::size_t>(j)];
        resk += kWgk[static_cast<std::size_t>(j)] * s;
        resabs += kWgk[static_cast<std::size_t>(j)] *
                  (std::abs(f1[static_cast<std::size_t>(j)]) + std::abs(f2[static_cast<std::size_t>(j)]));
        if (j % 2 == 1) resg += kWg[static_cast<std::size_t>(j / 2)] * s;
    }
    const double mean = 0.5 * resk;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));

    const double habs = std::abs(h);
    double err = std::abs((resk - resg) * h);
    resasc *= habs;
    resabs *= habs;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
    return {a, b, resk * h, err};
}

/// Slope of log|f| against log(distance) on geometrically shrinking windows
/// next to `end`, approached from the side given by `dir`.
template <class F>
double fit_endpoint_exponent(const F& f, double end, double length, int dir) {
    const std::array<double, 3> rel = {1e-3, 1e-5, 1e-7};
    std::array<double, 3> lv{};
    int zeros = 0;
    for (std::size_t i = 0; i < rel.size(); ++i) {
        const double h = length * rel[i];
        const double v = std::abs(f(end + dir * h));
        if (!std::isfinite(v)) return -std::numeric_limits<double>::infinity();
        if (v == 0.0) {
            ++zeros;
            lv[i] = 0.0;
        } else {
            lv[i] = std::log(v);
        }
    }
    if (zeros == 3) return std::numeric_limits<double>::infinity();
    if (zeros > 0) return std::numeric_limits<double>::infinity();
    return (lv[2] - lv[1]) / (std::log(rel[2]) - std::log(rel[1]));
}

}  // namespace detail

/// Globally adaptive integration over consecutive intervals given by
/// `points` (at least two, increasing). Bisects the segment with the largest
/// error estimate until the total error is within
/// max(rel_tol * |value|, abs_tol).
template <class F>
QuadratureResult integrate_pieces(const F& f, const std::vector<double>& points, const QuadratureOptions& opt = {}) {
    if (points.size() < 2) throw std::invalid_argument("integrate: need at least two points");
    if (!(opt.rel_tol > 0.0) && !(opt.abs_tol > 0.0)) throw std::invalid_argument("integrate: tolerance must be positive");
    QuadratureResult out;
    const double a = points.front(), b = points.back();
    if (a == b) {
        out.converged = true;
        return out;
    }
    if (opt.diagnose_endpoints) {
        const double len = b - a;
        out.endpoint_exponents.first = detail::fit_endpoint_exponent(f, a, len, +1);
        out.endpoint_exponents.second = detail::fit_endpoint_exponent(f, b, len, -1);
        if (out.endpoint_exponents.first <= kDivergentExponent ||
            out.endpoint_exponents.second <= kDivergentExponent) {
            out.value = std::numeric_limits<double>::infinity();
            out.error_estimate = std::numeric_limits<double>::infinity();
            out.divergent = true;
            return out;
        }
    }

    std::priority_queue<detail::Segment> heap;
    double total = 0.0, err = 0.0;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        if (!(points[i + 1] > points[i])) throw std::invalid_argument("integrate: points must increase");
        auto s = detail::kronrod15(f, points[i], points[i + 1]);
        total += s.value;
        err += s.error;
        heap.push(s);
    }
    int subdivisions = 0;
    auto done = [&] { return err <= std::max(opt.rel_tol * std::abs(total), opt.abs_tol); };
    while (!done() && subdivisions < opt.max_subdivisions) {
        detail::Segment top = heap.top();
        const double mid = 0.5 * (top.a + top.b);
        if (!(mid > top.a && mid < top.b)) break;  // interval exhausted at double resolution
        heap.pop();
        auto l = detail::kronrod15(f, top.a, mid);
        auto r = detail::kronrod15(f, mid, top.b);
        total += l.value + r.value - top.value;
        err += l.error + r.error - top.error;
        heap.push(l);
        heap.push(r);
        ++subdivisions;
        if (subdivisions % 64 == 0) {
            // Re-sum to keep the running totals free of drift.
            auto copy = heap;
            total = err = 0.0;
            while (!copy.empty()) {
                total += copy.top().value;
                err += copy.top().error;
                copy.pop();
            }
        }
    }
    {
        auto copy = heap;
        std::vector<double> vals, errs;
        while (!copy.empty()) {
            vals.push_back(copy.top().value);
            errs.push_back(copy.top().error);
            copy.pop();
        }
        // Sum smallest first.
        total = err = 0.0;
        for (auto it = vals.rbegin(); it != vals.rend(); ++it) total += *it;
        for (auto it = errs.rbegin(); it != errs.rend(); ++it) err += *it;
    }
    out.value = total;
    out.error_estimate = err;
    out.subdivisions = subdivisions;
    out.converged = done() && std::isfinite(total);
    return out;
}

template <class F>
QuadratureResult integrate(const F& f, double a, double b, const QuadratureOptions& opt = {}) {
    return integrate_pieces(f, std::vector<double>{a, b}, opt);
}

/// Like integrate but throws ToleranceNotMet when the tolerance is missed.
template <class F>
QuadratureResult integrate_or_throw(const F& f, const std::vector<double>& points, const QuadratureOptions& opt = {}) {
    QuadratureResult r = integrate_pieces(f, points, opt);
    if (!r.converged)
        throw ToleranceNotMet("quadrature error " + std::to_string(r.error_estimate) + " for value " +
                              std::to_string(r.value));
    return r;
}

}  // namespace hypsob
