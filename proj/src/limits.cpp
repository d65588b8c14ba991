#include "dpoly/limits.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <tuple>
#include <vector>

#include "dpoly/errors.hpp"
#include "dpoly/maps.hpp"

namespace dpoly {

namespace {

// Solve A c = y for a small dense system in long double, with column
// scaling and partial pivoting. The fit bases mix columns of very
// different magnitude, so the scaling is load-bearing.
std::vector<long double> solve_dense(std::vector<std::vector<long double>> A,
                                     std::vector<long double> y) {
    const std::size_t n = y.size();
    std::vector<long double> scale(n, 0);
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) scale[j] = std::max(scale[j], std::fabs(A[i][j]));
        if (scale[j] == 0) throw NotConverged("extrapolation basis is singular", 0.0, 0);
        for (std::size_t i = 0; i < n; ++i) A[i][j] /= scale[j];
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(A[i][k]) > std::fabs(A[piv][k])) piv = i;
        if (A[piv][k] == 0) throw NotConverged("extrapolation basis is singular", 0.0, 0);
        std::swap(A[k], A[piv]);
        std::swap(y[k], y[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const long double f = A[i][k] / A[k][k];
            for (std::size_t j = k; j < n; ++j) A[i][j] -= f * A[k][j];
            y[i] -= f * y[k];
        }
    }
    std::vector<long double> c(n, 0);
    for (std::size_t k = n; k-- > 0;) {
        long double s = y[k];
        for (std::size_t j = k + 1; j < n; ++j) s -= A[k][j] * c[j];
        c[k] = s / A[k][k];
    }
    for (std::size_t j = 0; j < n; ++j) c[j] /= scale[j];
    return c;
}

// Interpolatory fit of rung values against a basis in (n, L = log n);
// returns the coefficient of the constant basis function, i.e. the limit.
// Basis selector: 5-point {1, L^2/n, L/n, 1/n, L^3/n^2} or the 4-point
// reduction {1, L^2/n, L/n, 1/n}.
double fit_limit(const std::vector<double>& ns, const std::vector<double>& ys,
                 std::size_t npts) {
    const std::size_t total = ns.size();
    std::vector<std::vector<long double>> A(npts, std::vector<long double>(npts));
    std::vector<long double> y(npts);
    for (std::size_t i = 0; i < npts; ++i) {
        const long double n = ns[total - npts + i];
        const long double L = std::log(n);
        A[i][0] = 1;
        A[i][1] = L * L / n;
        A[i][2] = L / n;
        A[i][3] = 1 / n;
        if (npts == 5) A[i][4] = L * L * L / (n * n);
        y[i] = ys[total - npts + i];
    }
    return static_cast<double>(solve_dense(std::move(A), std::move(y))[0]);
}

}  // namespace

FitResult ladder_fit(const std::vector<double>& ns, const std::vector<double>& ys) {
    if (ns.size() != ys.size() || ns.size() < 5)
        throw NotConverged("fewer than five usable ladder rungs", 0.0,
                           static_cast<long long>(ns.size()));
    FitResult res;
    res.value = fit_limit(ns, ys, 5);
    res.error_estimate = std::fabs(res.value - fit_limit(ns, ys, 4));
    return res;
}

namespace {

template <typename F>
F ladder_rung(int b, F x0, long long n) {
    F x = x0;
    for (long long i = 0; i < n; ++i) {
        x = map_step<F>(b, b, x);
        if (!std::isfinite(static_cast<double>(x)))
            throw Overflow("variance iteration overflowed", i + 1);
    }
    return x;
}

template <typename F>
RLimitResult ladder_limit(const BranchingParams& p, double r, int max_exp) {
    const CriticalConstants c = critical_constants(p);
    std::vector<double> ns, ys;
    for (int k = 8; k <= max_exp; ++k) {
        const long long n = 1LL << k;
        const F nl = static_cast<F>(n);
        const F x0 = static_cast<F>(c.kappa2) *
                     (1 / nl + (static_cast<F>(c.eta) * std::log(nl) + static_cast<F>(r)) / (nl * nl));
        if (!(x0 > 0)) continue;
        ns.push_back(static_cast<double>(n));
        ys.push_back(static_cast<double>(ladder_rung<F>(p.b, x0, n)));
    }
    const FitResult fit = ladder_fit(ns, ys);
    RLimitResult res;
    res.value = fit.value;
    res.error_estimate = fit.error_estimate;
    res.ladder_top = 1LL << max_exp;
    return res;
}

std::mutex g_cache_mutex;
std::map<std::tuple<int, double, int, int>, RLimitResult> g_cache;

}  // namespace

RLimitResult r_limit(const BranchingParams& p, double r, const PrecisionPolicy& policy) {
    p.require_critical("r_limit");
    policy.validate();
    if (!std::isfinite(r)) throw DomainError("r_limit: r must be finite");

    const auto key = std::make_tuple(p.b, r, policy.ladder_max_exponent,
                                     static_cast<int>(policy.float_kind));
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
    }

    RLimitResult res;
    if (r > 1) {
        // Above the well-conditioned ladder range the direct rungs lose
        // accuracy faster than the gate allows; pull back to a base point
        // in (0, 1] and push the limit forward through the exact one-step
        // relation, growing the error estimate by the map derivative.
        const int shift = static_cast<int>(std::ceil(r - 1.0));
        const RLimitResult base = r_limit(p, r - shift, policy);
        long double x = base.value;
        long double err = base.error_estimate;
        for (int j = 0; j < shift; ++j) {
            err *= std::pow(1 + x, p.b - 1);
            x = map_step<long double>(p.b, p.b, x);
            if (!std::isfinite(static_cast<double>(x)))
                throw Overflow("limit propagation overflowed", j + 1);
        }
        res.value = static_cast<double>(x);
        res.error_estimate = static_cast<double>(err);
        res.ladder_top = base.ladder_top;
    } else if (policy.float_kind == FloatKind::extended) {
        res = ladder_limit<long double>(p, r, policy.ladder_max_exponent);
    } else {
        res = ladder_limit<double>(p, r, policy.ladder_max_exponent);
    }

    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_cache.emplace(key, res);
    return res;
}

double d_product(const BranchingParams& p, double x, const PrecisionPolicy& policy) {
    p.require_critical("d_product");
    policy.validate();
    if (!(x >= 0)) throw DomainError("d_product: x must be nonnegative");
    if (x == 0) return 0;

    // log p_n = (b-1) sum_{k<=n} log1p(M^{-k} x) - 2 log n approaches its
    // limit with 1/n and log n / n corrections; sample three doublings and
    // remove both with an interpolatory {1, log n / n, 1/n} fit.
    const int top = policy.ladder_max_exponent;
    const long long n4 = 1LL << top;
    const long long n2 = n4 / 2, n1 = n4 / 4;
    long double u = x, S = 0, comp = 0;
    std::array<long double, 3> logs{};
    for (long long k = 1; k <= n4; ++k) {
        u = map_inverse_step<long double>(p.b, u);
        const long double term = (p.b - 1) * std::log1p(u);
        const long double t = S + (term - comp);
        comp = (t - S) - (term - comp);
        S = t;
        if (k == n1) logs[0] = S;
        if (k == n2) logs[1] = S;
        if (k == n4) logs[2] = S;
    }
    std::vector<std::vector<long double>> A(3, std::vector<long double>(3));
    std::vector<long double> y(3);
    const std::array<long long, 3> ns{n1, n2, n4};
    for (int i = 0; i < 3; ++i) {
        const long double n = static_cast<long double>(ns[i]);
        A[i][0] = 1;
        A[i][1] = std::log(n) / n;
        A[i][2] = 1 / n;
        y[i] = std::exp(logs[i]) / (n * n);
    }
    return static_cast<double>(solve_dense(std::move(A), std::move(y))[0]);
}

double r_limit_derivative(const BranchingParams& p, double r, const PrecisionPolicy& policy) {
    const RLimitResult lim = r_limit(p, r, policy);
    const CriticalConstants c = critical_constants(p);
    return c.kappa2 * d_product(p, lim.value, policy);
}

}  // namespace dpoly
