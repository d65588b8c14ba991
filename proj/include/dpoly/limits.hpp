#pragma once

#include <vector>

#include "dpoly/params.hpp"

namespace dpoly {

// Extrapolation of ladder rungs y(n) sampled at geometric n: interpolatory
// fit of the last five points against {1, log^2 n / n, log n / n, 1/n,
// log^3 n / n^2}; the error estimate is the distance to the four-point
// reduced-basis fit. Shared by the variance ladder and the moment ladder.
struct FitResult {
    double value = 0;
    double error_estimate = 0;
};

FitResult ladder_fit(const std::vector<double>& ns, const std::vector<double>& ys);

// Result of a ladder extrapolation: the extrapolated limit, a data-driven
// error estimate (difference between the full fit and a reduced-basis fit
// on one fewer rung), and the largest lattice generation used.
struct RLimitResult {
    double value = 0;
    double error_estimate = 0;
    long long ladder_top = 0;
};

// Limit of the variance recursion along the fine-tuned schedule:
// iterates the variance map n times from x = kappa^2 (1/n + eta log n / n^2
// + r / n^2) for n = 2^8 .. 2^K and extrapolates the rungs to n = infinity.
// Rungs whose starting value is not positive are skipped (deeply negative r
// at small n). For r > 1 the limit is instead propagated forward through
// the exact one-step relation from a base point in (0, 1], which keeps the
// accuracy of the well-conditioned ladder range. Critical lattices only.
// Results are memoized per (b, r, K, precision kind).
RLimitResult r_limit(const BranchingParams& p, double r,
                     const PrecisionPolicy& policy = default_policy());

// Infinite product D(x) = lim n^-2 prod_{k=1}^n (1 + M^{-k}(x))^{b-1},
// evaluated by three nested doublings and a {1, log n / n, 1/n} fit.
// Satisfies D(M(x)) = D(x) (1+x)^(b-1) and D(0) = 0. Critical only.
double d_product(const BranchingParams& p, double x,
                 const PrecisionPolicy& policy = default_policy());

// Derivative of the limit function with respect to the schedule offset:
// R'(r) = kappa^2 D(R(r)), using the memoized r_limit value.
double r_limit_derivative(const BranchingParams& p, double r,
                          const PrecisionPolicy& policy = default_policy());

}  // namespace dpoly
