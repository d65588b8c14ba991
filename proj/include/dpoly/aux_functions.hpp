#pragma once

#include "dpoly/params.hpp"
#include "dpoly/series.hpp"

namespace dpoly {

// f, h, h_hat evaluated at one point. h takes its argument on (0, 1];
// h_hat on (0, kappa^2]; the joint record is defined on the intersection.
struct AuxValues {
    double f;
    double h;
    double h_hat;
};

// Below this the closed forms lose digits to cancellation and a truncated
// exact-coefficient series (degree 6) is evaluated instead.
inline constexpr double kAuxSeriesSwitch = 1e-4;

// f(y): the part of M(kappa^2 y)/(kappa^2 y^4) left after removing the
// terms up to cubic; a polynomial of degree b-4, identically zero for b <= 3.
double aux_f(const BranchingParams& p, double y);

// h(y) = eta (rho(y)-1)/y + kappa^2 y / M(kappa^2 y) - f(y) rho(y),
// rho(y) = kappa^2 y (1-y)/M(kappa^2 y). Finite at y = 1.
double aux_h(const BranchingParams& p, double y);

// h_hat(x) = (eta/x^2)(x/kappa^2 - log(M(x)/x)) + h(x/kappa^2)/kappa^4,
// the summand weight in the correction series below.
double aux_h_hat(const BranchingParams& p, double x);

// Joint record on (0, min(1, kappa^2)].
AuxValues aux_functions(const BranchingParams& p, double x);

// Truncation degree used for the small-argument fallback.
inline constexpr int kAuxSeriesDegree = 6;

}  // namespace dpoly
