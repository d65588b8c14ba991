#pragma once

#include <vector>

#include "dpoly/disorder.hpp"
#include "dpoly/params.hpp"
#include "dpoly/rational.hpp"

namespace dpoly {

// Centered-moment state rho^(2..m_max); values[j-2] holds rho^(j).
struct MomentVector {
    int m_max = 2;
    std::vector<double> values;
};

struct MomentVectorExact {
    int m_max = 2;
    std::vector<Rational> values;
};

// Applies the full recursion system P_2..P_{m_max} simultaneously n times
// (Jacobi update: every component reads only the previous generation).
MomentVector iterate_moments(int b, int m_max, const MomentVector& init, long long n);
MomentVectorExact iterate_moments_exact(int b, int m_max, const MomentVectorExact& init,
                                        long long n);

// One row of the limit table: R^(2..m_max)(r) with per-component
// extrapolation error estimates and the ladder top actually used.
struct LimitRow {
    double r = 0;
    int m_max = 2;
    std::vector<double> values;
    std::vector<double> residuals;
    long long converged_n = 0;
};

// Ladder route: for n = 2^k the disorder is tuned so the initial variance
// equals kappa^2 (1/n + (eta log n + r)/n^2) exactly, higher initial moments
// come from the tilted model, and the n-step moment flow is extrapolated
// per component. For r > 1 the row is pushed forward from a base row in
// (0, 1] through the exact one-step recursion.
LimitRow limit_moments(int b, int m_max, const DisorderModel& model, double r,
                       const PrecisionPolicy& policy = default_policy());

// Independent series route for component m >= 3:
//   R^(m)(r) = sum_{k>=1} V_m(row r-k) prod_{j<k} (1/b^{m-2} + U_m(row r-j)),
// with rows below r reconstructed from the anchor row by inverting the
// recursion downward. Valid where every product factor stays below 1.
double limit_moments_series(int b, int m, double r, const LimitRow& anchor,
                            const PrecisionPolicy& policy = default_policy());

// Derivatives (d/dr) R^(2..m_max)(r) via the matrix-product series over
// shifted rows; index [j-2] holds R^(j)'. The m=2 component reproduces
// r_limit_derivative.
std::vector<double> moment_derivatives(int b, int m_max, double r, const LimitRow& anchor,
                                       const PrecisionPolicy& policy = default_policy());

// kappa_b^m m! / (2^{m/2} (m/2)!), the Gaussian limit constant for even m.
double gaussian_constant(int b, int m);

struct AsymptoticsRow {
    double r = 0;
    std::vector<double> values;  // R^(m)(r), m = 2..m_max
    std::vector<double> scaled;  // even m: |r|^{m/2} R / gaussian_constant; odd: |r|^{(m+1)/2} R
};

// Deep-r scan of the moment limits in Gaussian scaling: the even-m scaled
// entries approach 1, the odd-m entries stay bounded.
std::vector<AsymptoticsRow> asymptotics_scan(int b, int m_max, const std::vector<double>& rs,
                                             const DisorderModel& model,
                                             const PrecisionPolicy& policy = default_policy());

// max over 1 <= k <= n of |rho_k^(m)| / (rho_k^(2))^{m/2} along the tuned
// trajectory; bounded uniformly in n for fixed r in the convergent regime.
double moment_bound_ratio(int b, int m, const DisorderModel& model, double r, long long n,
                          const PrecisionPolicy& policy = default_policy());

enum class DichotomyClass { vanishing, marginal, diverging };

struct DichotomyRow {
    double t = 0;
    double final_value = 0;  // NaN when the iteration overflowed
    bool overflowed = false;
    DichotomyClass cls = DichotomyClass::marginal;
};

// Classifies the variance trajectory started at t^2/n after n = 2^n_exp map
// steps: below kappa_b the iterate collapses, above it blows up.
std::vector<DichotomyRow> dichotomy_scan(int b, const std::vector<double>& ts, int n_exp);

}  // namespace dpoly
