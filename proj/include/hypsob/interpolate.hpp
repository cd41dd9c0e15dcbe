#pragma once

#include "hypsob/errors.hpp"
#include "hypsob/poly.hpp"
#include "hypsob/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace hypsob {

/// Unique polynomial of degree <= degree_bound through `points` (Newton
/// divided differences over all points). Throws DegreeExceeded when the data
/// need a higher degree.
inline DimPoly interpolate(const std::vector<std::pair<Rational, Rational>>& points, int degree_bound) {
    if (degree_bound < 0) throw std::invalid_argument("interpolate: negative degree bound");
    if (points.size() < static_cast<std::size_t>(degree_bound) + 1)
        throw std::invalid_argument("interpolate: need at least degree_bound + 1 points");
    for (std::size_t i = 0; i < points.size(); ++i)
        for (std::size_t j = i + 1; j < points.size(); ++j)
            if (points[i].first == points[j].first) throw std::invalid_argument("interpolate: repeated abscissa");

    const std::size_t m = points.size();
    std::vector<Rational> dd(m);
    for (std::size_t i = 0; i < m; ++i) dd[i] = points[i].second;
    for (std::size_t level = 1; level < m; ++level)
        for (std::size_t i = m - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (points[i].first - points[i - level].first);

    DimPoly result;
    DimPoly basis(1);
    const DimPoly x = DimPoly::variable();
    for (std::size_t i = 0; i < m; ++i) {
        result += basis * dd[i];
        basis = basis * (x - DimPoly(points[i].first));
    }
    if (result.degree() > degree_bound)
        throw DegreeExceeded("interpolant has degree " + std::to_string(result.degree()) + " > bound " +
                             std::to_string(degree_bound));
    return result;
}

}  // namespace hypsob
