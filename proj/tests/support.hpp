#pragma once

#include "hypsob/multi_poly.hpp"
#include "hypsob/poly.hpp"
#include "hypsob/rational.hpp"

#include <cstdint>
#include <random>

namespace hypsob::testing {

inline DimPoly n_sym() { return dim_symbol(); }
inline DimPoly lit(long p, long q = 1) { return DimPoly(Rational(p, q)); }

/// Small deterministic generator for property tests.
class Gen {
public:
    explicit Gen(std::uint64_t seed) : eng_(seed) {}

    long integer(long lo, long hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo + 1);
        return lo + static_cast<long>(eng_() % span);
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

    Rational rational(long mag = 9, long max_den = 6) {
        return Rational(integer(-mag, mag), integer(1, max_den));
    }

    DimPoly dim_poly(int max_degree) {
        const int d = static_cast<int>(integer(-1, max_degree));
        std::vector<Rational> c;
        for (int i = 0; i <= d; ++i) c.push_back(rational());
        return DimPoly(std::move(c));
    }

    MultiPoly multi_poly(int terms, int max_exp) {
        MultiPoly p;
        for (int t = 0; t < terms; ++t) {
            Exponents e{};
            for (auto& x : e) x = static_cast<int>(integer(0, max_exp));
            p.add_term(e, rational());
        }
        return p;
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace hypsob::testing
