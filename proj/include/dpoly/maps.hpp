#pragma once

#include "dpoly/errors.hpp"
#include "dpoly/params.hpp"

#include <cmath>
#include <limits>

namespace dpoly {

// One-step variance map ((1+x)^s - 1)/b and, at s = b, its inverse
// (1+bx)^{1/b} - 1. The expm1/log1p forms keep full relative accuracy for
// small x, where the map is within O(x^2) of the identity.

template <typename F>
inline F map_step(int b, int s, F x) {
    if constexpr (std::is_same_v<F, long double>)
        return expm1l(s * log1pl(x)) / b;
    else
        return std::expm1(s * std::log1p(x)) / b;
}

template <typename F>
inline F map_inverse_step(int b, F x) {
    if constexpr (std::is_same_v<F, long double>)
        return expm1l(log1pl(static_cast<F>(b) * x) / b);
    else
        return std::expm1(std::log1p(static_cast<F>(b) * x) / b);
}

double m_map(const BranchingParams& p, double x);
double m_inverse(const BranchingParams& p, double x);

// n-fold composition: map for n > 0, inverse map for n < 0, identity at 0.
// Throws Overflow (with the step count reached) if a forward iterate leaves
// the double range.
double m_iterate(const BranchingParams& p, double x, long n);

// Derivative of the one-step map, s(1+x)^{s-1}/b.
double m_map_derivative(const BranchingParams& p, double x);

}  // namespace dpoly
