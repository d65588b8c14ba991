#include "dpoly/moment_flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "dpoly/errors.hpp"
#include "dpoly/limits.hpp"
#include "dpoly/maps.hpp"
#include "dpoly/moment_poly.hpp"
#include "dpoly/polynomial.hpp"

namespace dpoly {

namespace {

// Compiled long double recursion system P_2..P_{m_max}; index j-2 holds P_j.
struct CompiledSystem {
    std::vector<CompiledPoly<long double>> polys;
};

const CompiledSystem& compiled_system(int b, int m_max) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, CompiledSystem> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({b, m_max});
    if (it != cache.end()) return it->second;
    CompiledSystem sys;
    for (int j = 2; j <= m_max; ++j) sys.polys.emplace_back(moment_polynomials(b, j).p);
    return cache.emplace(std::make_pair(b, m_max), std::move(sys)).first->second;
}

// Jacobi step: every component reads the previous vector only.
void system_step(const CompiledSystem& sys, std::vector<long double>& x,
                 std::vector<long double>& tmp, long long step_index) {
    for (std::size_t j = 0; j < sys.polys.size(); ++j) tmp[j] = sys.polys[j].eval(x.data());
    for (const long double v : tmp)
        if (!std::isfinite(static_cast<double>(v)))
            throw Overflow("moment iteration overflowed", static_cast<long>(step_index));
    x.swap(tmp);
}

long double inv_int_pow(int b, int e) {
    long double r = 1;
    for (int i = 0; i < e; ++i) r /= b;
    return r;
}

// Rows below an anchor row: rows[k-1] holds (R^(2),...,R^(m_top)) at r-k
// for k = 1..depth. The variance column descends through the exact inverse
// map, which contracts in that direction. Components >= 3 must not be
// inverted downward (the inverse expands by b^{i-2} per row and turns the
// deep rows into noise), so each one is refilled upward from a zero seed
// placed `margin` rows below the deepest requested row, with the margin
// enlarged until the seed's influence on the returned rows is provably
// below 1e-30. The audited damping factor is dP_3/dy_3, the slowest of
// the per-component contractions.
std::vector<std::vector<long double>> fill_rows(int b, int m_top,
                                                const std::vector<double>& anchor_lower,
                                                int depth) {
    std::vector<CompiledPoly<long double>> comp;
    for (int i = 3; i <= m_top; ++i) comp.emplace_back(moment_polynomials(b, i).p);
    const CompiledPoly<long double> dp3_dy3(moment_polynomials(b, 3).p.partial(3));

    int margin = 64;
    for (;;) {
        const int total = depth + margin;
        std::vector<std::vector<long double>> rows(
            total, std::vector<long double>(m_top - 1, 0.0L));
        long double v = anchor_lower[0];
        for (int k = 1; k <= total; ++k) {
            v = map_inverse_step<long double>(b, v);
            rows[k - 1][0] = v;
        }
        for (int i = 3; i <= m_top; ++i) {
            rows[total - 1][i - 2] = 0;
            for (int k = total; k >= 2; --k)
                rows[k - 2][i - 2] = comp[i - 3].eval(rows[k - 1].data());
        }

        long double suppression = 1;
        for (int k = depth + 1; k <= total; ++k)
            suppression *= std::min<long double>(dp3_dy3.eval(rows[k - 1].data()), 1.0L);
        if (suppression <= 1e-30L) {
            rows.resize(depth);
            return rows;
        }
        margin *= 2;
        if (margin > 8192)
            throw NotConverged("seed margin failed to suppress the deep-row fill", 0.0,
                               static_cast<long>(depth));
    }
}

}  // namespace

MomentVector iterate_moments(int b, int m_max, const MomentVector& init, long long n) {
    if (b < 2) throw DomainError("iterate_moments: b must be >= 2");
    if (m_max < 2) throw DomainError("iterate_moments: m_max must be >= 2");
    if (n < 0) throw DomainError("iterate_moments: n must be >= 0");
    if (init.values.size() < static_cast<std::size_t>(m_max - 1))
        throw DomainError("iterate_moments: initial vector shorter than m_max - 1");
    const CompiledSystem& sys = compiled_system(b, m_max);
    std::vector<long double> x(init.values.begin(), init.values.begin() + (m_max - 1));
    std::vector<long double> tmp(x.size());
    for (long long k = 0; k < n; ++k) system_step(sys, x, tmp, k + 1);
    MomentVector out;
    out.m_max = m_max;
    out.values.assign(x.begin(), x.end());
    return out;
}

MomentVectorExact iterate_moments_exact(int b, int m_max, const MomentVectorExact& init,
                                        long long n) {
    if (b < 2) throw DomainError("iterate_moments_exact: b must be >= 2");
    if (m_max < 2) throw DomainError("iterate_moments_exact: m_max must be >= 2");
    if (n < 0) throw DomainError("iterate_moments_exact: n must be >= 0");
    if (init.values.size() < static_cast<std::size_t>(m_max - 1))
        throw DomainError("iterate_moments_exact: initial vector shorter than m_max - 1");
    std::vector<Rational> x(init.values.begin(), init.values.begin() + (m_max - 1));
    for (long long k = 0; k < n; ++k) {
        std::vector<Rational> next(x.size());
        for (int j = 2; j <= m_max; ++j) next[j - 2] = moment_polynomials(b, j).p.eval(x);
        x = std::move(next);
    }
    MomentVectorExact out;
    out.m_max = m_max;
    out.values = std::move(x);
    return out;
}

LimitRow limit_moments(int b, int m_max, const DisorderModel& model, double r,
                       const PrecisionPolicy& policy) {
    if (b < 2) throw DomainError("limit_moments: b must be >= 2");
    if (m_max < 2) throw DomainError("limit_moments: m_max must be >= 2");
    policy.validate();
    if (!std::isfinite(r)) throw DomainError("limit_moments: r must be finite");

    if (r > 1) {
        // The direct ladder loses accuracy above r = 1 faster than any gate
        // allows; compute a base row in (0, 1] and push it forward through
        // the exact one-step recursion, growing each residual by the row
        // sum of |Jacobian| entries times the incoming residuals.
        const int shift = static_cast<int>(std::ceil(r - 1.0));
        LimitRow row = limit_moments(b, m_max, model, r - shift, policy);
        std::vector<std::vector<CompiledPoly<double>>> jac;
        for (int i = 2; i <= m_max; ++i) {
            std::vector<CompiledPoly<double>> jrow;
            for (int j = 2; j <= i; ++j)
                jrow.emplace_back(moment_polynomials(b, i).p.partial(j));
            jac.push_back(std::move(jrow));
        }
        const CompiledSystem& sys = compiled_system(b, m_max);
        std::vector<long double> x(row.values.begin(), row.values.end());
        std::vector<long double> tmp(x.size());
        std::vector<double> res = row.residuals;
        for (int s = 0; s < shift; ++s) {
            const std::vector<double> xd(x.begin(), x.end());
            std::vector<double> nres(res.size(), 0.0);
            for (int i = 2; i <= m_max; ++i)
                for (int j = 2; j <= i; ++j)
                    nres[i - 2] += std::fabs(jac[i - 2][j - 2].eval(xd.data())) * res[j - 2];
            system_step(sys, x, tmp, s + 1);
            res = std::move(nres);
        }
        row.r = r;
        row.values.assign(x.begin(), x.end());
        row.residuals = std::move(res);
        return row;
    }

    const CriticalConstants c = critical_constants(BranchingParams{b, b});
    const CompiledSystem& sys = compiled_system(b, m_max);
    std::vector<double> ns;
    std::vector<std::vector<double>> ys(m_max - 1);
    for (int k = 8; k <= policy.ladder_max_exponent; ++k) {
        const long long n = 1LL << k;
        const long double nl = static_cast<long double>(n);
        const long double x0 =
            static_cast<long double>(c.kappa2) *
            (1 / nl +
             (static_cast<long double>(c.eta) * std::log(nl) + static_cast<long double>(r)) /
                 (nl * nl));
        if (!(x0 > 0)) continue;
        // The fine-tuned disorder strength: exact inverse of the tilted
        // variance at x0. The variance component is seeded with x0 itself;
        // a generic log-mgf difference here would lose the last ~5 digits
        // of the x0 - kappa^2/n cancellation and poison the whole ladder.
        const long double beta = beta_for_variance_ext(model, x0);
        std::vector<long double> x(m_max - 1, 0.0L);
        x[0] = x0;
        for (int j = 3; j <= m_max; ++j)
            x[j - 2] = initial_moment(model, static_cast<double>(beta), j);
        std::vector<long double> tmp(x.size());
        for (long long i = 0; i < n; ++i) system_step(sys, x, tmp, i + 1);
        ns.push_back(static_cast<double>(n));
        for (int j = 0; j < m_max - 1; ++j) ys[j].push_back(static_cast<double>(x[j]));
    }
    if (ns.size() < 5)
        throw NotConverged("fewer than five usable ladder rungs", 0.0,
                           static_cast<long>(ns.size()));
    LimitRow row;
    row.r = r;
    row.m_max = m_max;
    row.converged_n = 1LL << policy.ladder_max_exponent;
    for (int j = 0; j < m_max - 1; ++j) {
        const FitResult fit = ladder_fit(ns, ys[j]);
        row.values.push_back(fit.value);
        row.residuals.push_back(fit.error_estimate);
    }
    return row;
}

double limit_moments_series(int b, int m, double r, const LimitRow& anchor,
                            const PrecisionPolicy& policy) {
    if (b < 2) throw DomainError("limit_moments_series: b must be >= 2");
    if (m < 3) throw DomainError("limit_moments_series: m must be >= 3");
    policy.validate();
    if (anchor.m_max < m - 1 || anchor.values.size() < static_cast<std::size_t>(m - 2))
        throw DomainError("limit_moments_series: anchor row lacks components 2.." +
                          std::to_string(m - 1));
    if (std::fabs(anchor.r - r) > 1e-9 * std::max(1.0, std::fabs(r)))
        throw DomainError("limit_moments_series: anchor row is not at r");

    const MomentPolynomials& mp = moment_polynomials(b, m);
    const CompiledPoly<long double> vm(mp.v);
    const CompiledPoly<long double> um(mp.u);
    const long double base = inv_int_pow(b, m - 2);
    const std::vector<double> anchor_lower(anchor.values.begin(),
                                           anchor.values.begin() + (m - 2));

    int depth = 600;
    for (;;) {
        const std::vector<std::vector<long double>> rows = fill_rows(b, m, anchor_lower, depth);
        long double sum = 0;
        long double prod = 1;
        for (int k = 1; k <= depth; ++k) {
            const std::vector<long double>& row = rows[k - 1];
            const long double inc = vm.eval(row.data()) * prod;
            sum += inc;
            if (k >= 200 && std::fabs(static_cast<double>(inc)) <
                                policy.series_tail_tol * std::fabs(static_cast<double>(sum)))
                return static_cast<double>(sum);
            const long double factor = base + um.eval(row.data());
            if (!(factor < 1))
                throw SeriesDiverged("series product factor reached 1 at shift " +
                                     std::to_string(k));
            prod *= factor;
        }
        depth *= 2;
        if (depth > 20000)
            throw NotConverged("series did not meet the tail tolerance",
                               static_cast<double>(sum), static_cast<long>(depth / 2));
    }
}

std::vector<double> moment_derivatives(int b, int m_max, double r, const LimitRow& anchor,
                                       const PrecisionPolicy& policy) {
    if (b < 2) throw DomainError("moment_derivatives: b must be >= 2");
    if (m_max < 2) throw DomainError("moment_derivatives: m_max must be >= 2");
    policy.validate();
    const double d2 = r_limit_derivative(BranchingParams{b, b}, r, policy);
    if (m_max == 2) return {d2};
    if (anchor.values.size() < static_cast<std::size_t>(m_max - 2))
        throw DomainError("moment_derivatives: anchor row lacks components 2.." +
                          std::to_string(m_max - 1));
    if (std::fabs(anchor.r - r) > 1e-9 * std::max(1.0, std::fabs(r)))
        throw DomainError("moment_derivatives: anchor row is not at r");

    const int d = m_max - 2;  // components 3..m_max
    // dP_i/dy_j for i, j in {3..m_max} (the shift-equation Jacobian block)
    // and dP_i/dy_2 (the forcing column).
    std::vector<std::vector<CompiledPoly<long double>>> dblock;
    std::vector<CompiledPoly<long double>> dcol;
    for (int i = 3; i <= m_max; ++i) {
        const SparsePolynomial& pi = moment_polynomials(b, i).p;
        dcol.emplace_back(pi.partial(2));
        std::vector<CompiledPoly<long double>> jrow;
        for (int j = 3; j <= m_max; ++j) {
            if (j <= i) jrow.emplace_back(pi.partial(j));
            else jrow.emplace_back(SparsePolynomial::constant(i, 0));
        }
        dblock.push_back(std::move(jrow));
    }
    const std::vector<double> anchor_lower(anchor.values.begin(),
                                           anchor.values.begin() + (m_max - 2));

    int depth = 600;
    for (;;) {
        const std::vector<std::vector<long double>> rows =
            fill_rows(b, m_max, anchor_lower, depth);
        std::vector<long double> sum(d, 0.0L);
        std::vector<std::vector<long double>> prod(d, std::vector<long double>(d, 0.0L));
        for (int i = 0; i < d; ++i) prod[i][i] = 1;
        long double dprime = d2;  // R^(2)'(r - k), advanced per shift
        bool done = false;
        for (int k = 1; k <= depth; ++k) {
            const std::vector<long double>& row = rows[k - 1];
            dprime /= std::pow(1 + row[0], static_cast<long double>(b - 1));
            std::vector<long double> w(d);
            for (int i = 0; i < d; ++i) w[i] = dcol[i].eval(row.data()) * dprime;
            long double term_max = 0, sum_max = 0;
            for (int i = 0; i < d; ++i) {
                long double t = 0;
                for (int j = 0; j < d; ++j) t += prod[i][j] * w[j];
                sum[i] += t;
                term_max = std::max(term_max, std::fabs(t));
                sum_max = std::max(sum_max, std::fabs(sum[i]));
            }
            if (k >= 200 && term_max < policy.series_tail_tol * std::max(sum_max, 1e-300L)) {
                done = true;
                break;
            }
            std::vector<std::vector<long double>> next(d, std::vector<long double>(d, 0.0L));
            for (int jj = 0; jj < d; ++jj) {
                std::vector<long double> col(d);
                for (int i = 0; i < d; ++i) col[i] = dblock[i][jj].eval(row.data());
                for (int i = 0; i < d; ++i) {
                    long double t = 0;
                    for (int l = 0; l < d; ++l) t += prod[i][l] * col[l];
                    next[i][jj] = t;
                }
            }
            prod = std::move(next);
        }
        if (done) {
            std::vector<double> out;
            out.reserve(m_max - 1);
            out.push_back(d2);
            for (int i = 0; i < d; ++i) out.push_back(static_cast<double>(sum[i]));
            return out;
        }
        depth *= 2;
        if (depth > 20000)
            throw NotConverged("derivative series did not meet the tail tolerance",
                               static_cast<double>(sum[0]), static_cast<long>(depth / 2));
    }
}

double gaussian_constant(int b, int m) {
    if (b < 2) throw DomainError("gaussian_constant: b must be >= 2");
    if (m < 2 || m % 2 != 0) throw DomainError("gaussian_constant: m must be even and >= 2");
    const int h = m / 2;
    const Rational c = rat_pow(Rational(2, b - 1), h) * Rational(factorial(m)) /
                       (rat_pow(Rational(2), h) * Rational(factorial(h)));
    return to_double(c);
}

std::vector<AsymptoticsRow> asymptotics_scan(int b, int m_max, const std::vector<double>& rs,
                                             const DisorderModel& model,
                                             const PrecisionPolicy& policy) {
    std::vector<AsymptoticsRow> report;
    report.reserve(rs.size());
    for (const double r : rs) {
        const LimitRow row = limit_moments(b, m_max, model, r, policy);
        AsymptoticsRow out;
        out.r = r;
        out.values = row.values;
        for (int m = 2; m <= m_max; ++m) {
            const double v = row.values[m - 2];
            const double ar = std::fabs(r);
            if (m % 2 == 0)
                out.scaled.push_back(std::pow(ar, m / 2.0) * v / gaussian_constant(b, m));
            else
                out.scaled.push_back(std::pow(ar, (m + 1) / 2.0) * v);
        }
        report.push_back(std::move(out));
    }
    return report;
}

double moment_bound_ratio(int b, int m, const DisorderModel& model, double r, long long n,
                          const PrecisionPolicy& policy) {
    if (b < 2) throw DomainError("moment_bound_ratio: b must be >= 2");
    if (m < 2) throw DomainError("moment_bound_ratio: m must be >= 2");
    if (n < 1) throw DomainError("moment_bound_ratio: n must be >= 1");
    policy.validate();
    const CriticalConstants c = critical_constants(BranchingParams{b, b});
    const long double nl = static_cast<long double>(n);
    const long double x0 =
        static_cast<long double>(c.kappa2) *
        (1 / nl +
         (static_cast<long double>(c.eta) * std::log(nl) + static_cast<long double>(r)) /
             (nl * nl));
    if (!(x0 > 0))
        throw DomainError("moment_bound_ratio: tuned initial variance is not positive");
    const long double beta = beta_for_variance_ext(model, x0);
    const CompiledSystem& sys = compiled_system(b, m);
    std::vector<long double> x(m - 1, 0.0L);
    x[0] = x0;
    for (int j = 3; j <= m; ++j) x[j - 2] = initial_moment(model, static_cast<double>(beta), j);
    std::vector<long double> tmp(x.size());
    long double ratio = 0;
    for (long long k = 1; k <= n; ++k) {
        system_step(sys, x, tmp, k);
        ratio = std::max(ratio,
                         std::fabs(x[m - 2]) / std::pow(x[0], static_cast<long double>(m) / 2));
    }
    return static_cast<double>(ratio);
}

std::vector<DichotomyRow> dichotomy_scan(int b, const std::vector<double>& ts, int n_exp) {
    if (b < 2) throw DomainError("dichotomy_scan: b must be >= 2");
    if (n_exp < 1 || n_exp > 40) throw DomainError("dichotomy_scan: n_exp out of range");
    const long long n = 1LL << n_exp;
    std::vector<DichotomyRow> report;
    report.reserve(ts.size());
    for (const double t : ts) {
        if (!std::isfinite(t) || t < 0)
            throw DomainError("dichotomy_scan: t must be finite and nonnegative");
        DichotomyRow row;
        row.t = t;
        double x = t * t / static_cast<double>(n);
        for (long long k = 0; k < n; ++k) {
            x = map_step<double>(b, b, x);
            if (!std::isfinite(x)) {
                row.overflowed = true;
                break;
            }
            if (x > 1e3) break;  // the map is nondecreasing on [0, inf); no way back
        }
        row.final_value = row.overflowed ? std::numeric_limits<double>::quiet_NaN() : x;
        if (row.overflowed || x > 1e3) row.cls = DichotomyClass::diverging;
        else if (x < 1e-2) row.cls = DichotomyClass::vanishing;
        else row.cls = DichotomyClass::marginal;
        report.push_back(row);
    }
    return report;
}

}  // namespace dpoly
