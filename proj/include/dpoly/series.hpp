#pragma once

#include "dpoly/errors.hpp"
#include "dpoly/params.hpp"
#include "dpoly/rational.hpp"

#include <vector>

namespace dpoly {

// Dense truncated power series with exact rational coefficients,
// coeffs[k] = coefficient of y^k. All operations truncate to the shorter
// operand's order; no rounding anywhere.
struct RationalSeries {
    std::vector<Rational> c;

    explicit RationalSeries(std::size_t order) : c(order, Rational(0)) {}
    std::size_t order() const { return c.size(); }

    static RationalSeries constant(const Rational& v, std::size_t order) {
        RationalSeries s(order);
        s.c[0] = v;
        return s;
    }
};

RationalSeries operator+(const RationalSeries& a, const RationalSeries& b);
RationalSeries operator-(const RationalSeries& a, const RationalSeries& b);
RationalSeries operator*(const RationalSeries& a, const RationalSeries& b);
RationalSeries operator*(const Rational& k, const RationalSeries& a);

// 1/a; requires a.c[0] != 0.
RationalSeries series_recip(const RationalSeries& a);

// log(1 + u) for u with u.c[0] == 0.
RationalSeries series_log1p(const RationalSeries& u);

// Divides by y^k; the dropped low coefficients must be zero.
RationalSeries series_shift_down(const RationalSeries& a, std::size_t k);

// Evaluates the truncated series at a rational point (exact).
Rational series_eval(const RationalSeries& a, const Rational& y);

// Correction-function Taylor data for one branching number, all exact.
// Variable conventions: h and f are series in y; h_hat is returned as a
// series in its own (unscaled) argument x, obtained from the y-series of
// h_hat(kappa^2 y) by dividing coefficient j by kappa^(2j).
struct CorrectionSeries {
    int b;
    RationalSeries f;       // polynomial of degree b-4 (zero series for b <= 3)
    RationalSeries h;       // h(y)
    RationalSeries h_hat;   // h_hat(x), coefficients in x
};

// Builds the exact Taylor data at the given truncation order (default
// enough for the degree-6 small-argument fallback plus tail coefficients).
CorrectionSeries build_correction_series(int b, std::size_t order = 12);

// Cached per-b accessor (thread-safe, computed once).
const CorrectionSeries& correction_series(int b);

}  // namespace dpoly
