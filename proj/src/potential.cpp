#include "dpoly/potential.hpp"

#include "dpoly/aux_functions.hpp"
#include "dpoly/maps.hpp"
#include "dpoly/series.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace dpoly {

namespace {

// Both series below sum psi(u_l) over the inverse orbit, where
// psi(u) = w0 u^2 + w1 u^3 + w2 u^4 + O(u^5) near 0. In sigma = kappa^2/u
// coordinates the orbit advances by sigma' = sigma + 1 - eta/sigma + O(1/sigma^2).
// The prefix sums terms with sigma < sigma_target explicitly; the remainder,
// starting at the first point u* with sigma* >= sigma_target, follows from
// Euler-Maclaurin (sum_{l>=L} g = g(L)/2 + int_L^inf g - g'(L)/12 + ...):
//   remainder = psi(u*)/2 + a/sigma* + (a eta + bb)/(2 sigma*^2)
//             + ((bb eta + cc)/3 + a/6)/sigma*^3 + O(1/sigma*^4),
//   a = w0 kappa^4, bb = w1 kappa^6, cc = w2 kappa^8.
// With sigma_target ~ 2e4 the omitted terms are ~1e-13 absolute at worst,
// below the tail tolerance; the prefix costs ~2e4 inverse-map steps.
struct TailWeights {
    double w0, w1, w2;
};

double orbit_sum(const BranchingParams& p, double x, const TailWeights& w,
                 bool with_h_hat, double sigma_target) {
    const CriticalConstants c = critical_constants(p);
    const double k2 = c.kappa2;
    const double k4 = k2 * k2;
    const double a = w.w0 * k4;
    const double bb = w.w1 * k4 * k2;
    const double cc = w.w2 * k4 * k4;
    const double c1 = a;
    const double c2 = (a * c.eta + bb) / 2;
    const double c3 = (bb * c.eta + cc) / 3 + a / 6;

    // Kahan-compensated prefix sum.
    double sum = 0, comp = 0;
    double u = x;
    while (k2 / u < sigma_target) {
        const double term = with_h_hat ? aux_h_hat(p, u) * u * u : u * u;
        const double t = sum + (term - comp);
        comp = (t - sum) - (term - comp);
        sum = t;
        u = map_inverse_step<double>(p.b, u);
    }
    const double sigma = k2 / u;
    const double first = with_h_hat ? aux_h_hat(p, u) * u * u : u * u;
    const double tail = c1 / sigma + c2 / (sigma * sigma) + c3 / (sigma * sigma * sigma);
    return sum + first / 2 + tail;
}

}  // namespace

double s_series(const BranchingParams& p, double x, const PrecisionPolicy& policy) {
    p.require_critical("s_series");
    if (x < 0) throw DomainError("s_series: x must be >= 0");
    if (x == 0) return 0.0;
    policy.validate();
    // Include the k = 0 term x^2 up front; the orbit sum starts at u_1.
    const double sigma_target = 2e4;
    return x * x + orbit_sum(p, map_inverse_step<double>(p.b, x),
                             TailWeights{1, 0, 0}, false, sigma_target);
}

double f_series(const BranchingParams& p, double x, const PrecisionPolicy& policy) {
    p.require_critical("f_series");
    const CriticalConstants c = critical_constants(p);
    const double hi = map_step<double>(p.b, p.b, c.kappa2);
    if (!(x > 0) || x > hi)
        throw DomainError("f_series: argument must be in (0, M(kappa^2)]");
    policy.validate();
    const auto& cs = correction_series(p.b);
    TailWeights w{to_double(cs.h_hat.c[0]), to_double(cs.h_hat.c[1]), to_double(cs.h_hat.c[2])};
    const double sigma_target = 2e4;
    return orbit_sum(p, map_inverse_step<double>(p.b, x), w, true, sigma_target);
}

double g_func(const BranchingParams& p, double x, const PrecisionPolicy& policy) {
    p.require_critical("g_func");
    const CriticalConstants c = critical_constants(p);
    if (!(x > 0)) throw DomainError("g_func: x must be positive");
    return c.kappa2 / x + c.eta * std::log(c.kappa2 / x) - f_series(p, x, policy);
}

double g_monotone_threshold(const BranchingParams& p) {
    p.require_critical("g_monotone_threshold");
    static std::mutex mu;
    static std::map<int, double> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(p.b);
    if (it != cache.end()) return it->second;

    const CriticalConstants c = critical_constants(p);
    const double hi = map_step<double>(p.b, p.b, c.kappa2);
    const double step = 1e-3;
    double prev_x = step;
    double prev_g = g_func(p, prev_x);
    double delta = prev_x;
    for (double x = 2 * step; x <= hi; x += step) {
        const double g = g_func(p, x);
        if (!(g < prev_g)) break;
        delta = x;
        prev_g = g;
    }
    cache[p.b] = delta;
    return delta;
}

double g_inverse_seed(const BranchingParams& p, double y) {
    const CriticalConstants c = critical_constants(p);
    return c.kappa2 / y + c.kappa2 * c.eta * std::log(y) / (y * y);
}

double g_inverse(const BranchingParams& p, double y, const PrecisionPolicy& policy) {
    p.require_critical("g_inverse");
    const double delta = g_monotone_threshold(p);
    const double g_at_delta = g_func(p, delta, policy);
    if (y < g_at_delta)
        throw DomainError("g_inverse: y below G(delta), outside the decreasing branch");

    // G is strictly decreasing on (0, delta]. Build a bracket from the
    // asymptotic seed when it helps, else use the full interval.
    double lo = 1e-12, hi = delta;
    if (y > g_at_delta) {
        const double seed = g_inverse_seed(p, y);
        if (seed > 0 && seed < delta) {
            double slo = seed / 2, shi = std::min(2 * seed, delta);
            if (g_func(p, slo, policy) > y && g_func(p, shi, policy) < y) {
                lo = slo;
                hi = shi;
            }
        }
    }
    const int cap = 200;
    int iters = 0;
    while (hi - lo > policy.tol_abs * std::min(1.0, hi) && iters < cap) {
        const double mid = 0.5 * (lo + hi);
        if (g_func(p, mid, policy) > y)
            lo = mid;
        else
            hi = mid;
        ++iters;
    }
    if (iters >= cap)
        throw NotConverged("g_inverse: bisection cap reached", 0.5 * (lo + hi), iters);
    return 0.5 * (lo + hi);
}

}  // namespace dpoly
