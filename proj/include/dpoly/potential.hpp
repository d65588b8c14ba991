#pragma once

#include "dpoly/params.hpp"

namespace dpoly {

// Sum of squared inverse-map iterates, S(x) = sum_{k>=0} (M^{-k}(x))^2.
// The terms decay only like 1/k^2, so the sum is evaluated as an explicit
// prefix plus a closed-form tail derived from the inverse-orbit asymptotics
// (absolute tail error far below series_tail_tol).
double s_series(const BranchingParams& p, double x,
                const PrecisionPolicy& policy = default_policy());

// Correction series F(x) = sum_{l>=1} h_hat(u_l) u_l^2 over the inverse
// orbit u_l = M^{-l}(x); same prefix-plus-tail scheme. Domain (0, M(kappa^2)]
// (one inverse step must land inside h_hat's domain).
double f_series(const BranchingParams& p, double x,
                const PrecisionPolicy& policy = default_policy());

// Potential G(x) = kappa^2/x + eta log(kappa^2/x) - F(x). Strictly
// decreasing on (0, delta]; satisfies G(M(x)) = G(x) - 1 on the domain.
double g_func(const BranchingParams& p, double x,
              const PrecisionPolicy& policy = default_policy());

// Largest grid point (step 1e-3) at which G is still strictly decreasing;
// found once per b and cached.
double g_monotone_threshold(const BranchingParams& p);

// Inverse of G on (0, delta]: bracketed bisection seeded by the asymptotic
// inverse kappa^2/y + kappa^2 eta log(y)/y^2. Requires y >= G(delta).
double g_inverse(const BranchingParams& p, double y,
                 const PrecisionPolicy& policy = default_policy());

// Asymptotic seed for g_inverse at large y.
double g_inverse_seed(const BranchingParams& p, double y);

}  // namespace dpoly
