#include "dpoly/disorder.hpp"

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <limits>

#include "dpoly/errors.hpp"
#include "dpoly/params.hpp"

namespace dpoly {

namespace {

using mp_float = boost::multiprecision::cpp_bin_float_50;

// Builtin types take truncated-series patches near 0 where the direct
// expression loses relative accuracy; multiprecision keeps enough digits
// to evaluate the closed form directly.
template <typename F>
constexpr bool is_builtin_float = std::numeric_limits<F>::digits <= 64;

template <typename F>
F lam_bernoulli(double p, F beta) {
    using std::exp;
    using std::log;
    using std::sqrt;
    const F pf = static_cast<F>(p);
    const F qf = 1 - pf;
    const F s = sqrt(pf * qf);
    const F a1 = beta * (qf / s);
    const F a2 = beta * (-pf / s);
    const F m = a1 > a2 ? a1 : a2;
    return m + log(pf * exp(a1 - m) + qf * exp(a2 - m));
}

template <typename F>
F lam_uniform(F beta) {
    using std::fabs;
    using std::log;
    using std::sinh;
    using std::sqrt;
    const F u = sqrt(F(3)) * beta;
    if (u == 0) return 0;
    if constexpr (is_builtin_float<F>) {
        if (fabs(u) < F(0.01L)) {
            const F u2 = u * u;
            return u2 * (F(1) / 6 + u2 * (-F(1) / 180 + u2 * (F(1) / 2835 - u2 / 37800)));
        }
    }
    return log(sinh(u) / u);
}

template <typename F>
F log_mgf_impl(const DisorderModel& mdl, F beta) {
    using std::cosh;
    using std::fabs;
    using std::log;
    switch (mdl.kind) {
        case DisorderKind::standard_gaussian:
            return beta * beta / 2;
        case DisorderKind::rademacher:
            if constexpr (is_builtin_float<F>) {
                if (fabs(beta) < F(0.01L)) {
                    const F b2 = beta * beta;
                    return b2 * (F(1) / 2 + b2 * (-F(1) / 12 + b2 * (F(1) / 45 - b2 * 17 / 2520)));
                }
            }
            return log(cosh(beta));
        case DisorderKind::standardized_bernoulli:
            return lam_bernoulli<F>(mdl.p, beta);
        case DisorderKind::standardized_uniform:
            return lam_uniform<F>(beta);
    }
    throw DomainError("log_mgf: unknown disorder kind");
}

template <typename F>
F tilted_variance_impl(const DisorderModel& mdl, F beta) {
    using std::exp;
    using std::expm1;
    using std::fabs;
    using std::sqrt;
    using std::tanh;
    switch (mdl.kind) {
        case DisorderKind::standard_gaussian:
            return expm1(beta * beta);
        case DisorderKind::rademacher: {
            const F t = tanh(beta);
            return t * t;
        }
        case DisorderKind::standardized_bernoulli: {
            // Two-point law: Var(W) = p q (w_hi - w_lo)^2 with the
            // difference kept in expm1 form.
            const F pf = static_cast<F>(mdl.p);
            const F qf = 1 - pf;
            const F s = sqrt(pf * qf);
            const F lam = lam_bernoulli<F>(mdl.p, beta);
            const F d = expm1(beta / s);
            return pf * qf * exp(2 * (beta * (-pf / s) - lam)) * d * d;
        }
        case DisorderKind::standardized_uniform: {
            const F u = sqrt(F(3)) * beta;
            if (fabs(u) < F(0.01L)) {
                // Lambda(2u) - 2 Lambda(u) as one series, avoiding the
                // cancellation of the two O(u^2) terms.
                const F u2 = u * u;
                return expm1(u2 * (F(1) / 3 + u2 * (-F(7) / 90 + u2 * (F(62) / 2835 - u2 * 127 / 18900))));
            }
            return expm1(lam_uniform<F>(2 * beta) - 2 * lam_uniform<F>(beta));
        }
    }
    throw DomainError("tilted_variance: unknown disorder kind");
}

CriticalConstants constants_for(int b) {
    return critical_constants(BranchingParams::critical(b));
}

}  // namespace

DisorderModel gaussian_model() { return {DisorderKind::standard_gaussian, 0.5}; }
DisorderModel rademacher_model() { return {DisorderKind::rademacher, 0.5}; }
DisorderModel uniform_model() { return {DisorderKind::standardized_uniform, 0.5}; }

DisorderModel bernoulli_model(double p) {
    if (!(p > 0 && p < 1)) throw DomainError("bernoulli_model: p must lie in (0,1)");
    return {DisorderKind::standardized_bernoulli, p};
}

std::string model_name(const DisorderModel& model) {
    switch (model.kind) {
        case DisorderKind::standard_gaussian: return "gaussian";
        case DisorderKind::rademacher: return "rademacher";
        case DisorderKind::standardized_bernoulli: return "bernoulli";
        case DisorderKind::standardized_uniform: return "uniform";
    }
    return "unknown";
}

DisorderModel model_from_name(const std::string& name, double p) {
    if (name == "gaussian") return gaussian_model();
    if (name == "rademacher") return rademacher_model();
    if (name == "bernoulli") return bernoulli_model(p);
    if (name == "uniform") return uniform_model();
    throw ConfigError("unknown disorder model: " + name);
}

double log_mgf(const DisorderModel& model, double beta) {
    if (std::fabs(beta) > model.beta_max())
        throw DomainError("log_mgf: |beta| exceeds beta_max");
    return log_mgf_impl<double>(model, beta);
}

double tilted_variance(const DisorderModel& model, double beta) {
    if (2 * std::fabs(beta) > model.beta_max())
        throw DomainError("tilted_variance: 2|beta| exceeds beta_max");
    return tilted_variance_impl<double>(model, beta);
}

long double tilted_variance_ext(const DisorderModel& model, long double beta) {
    if (2 * std::fabs(static_cast<double>(beta)) > model.beta_max())
        throw DomainError("tilted_variance: 2|beta| exceeds beta_max");
    return tilted_variance_impl<long double>(model, beta);
}

double skew(const DisorderModel& model) {
    switch (model.kind) {
        case DisorderKind::standard_gaussian:
        case DisorderKind::rademacher:
        case DisorderKind::standardized_uniform:
            return 0;
        case DisorderKind::standardized_bernoulli:
            return (1 - 2 * model.p) / std::sqrt(model.p * (1 - model.p));
    }
    throw DomainError("skew: unknown disorder kind");
}

BetaSchedule schedule_for(const DisorderModel& model, int b, double r) {
    return BetaSchedule{b, skew(model), r};
}

double beta_schedule(const BetaSchedule& schedule, long long n) {
    if (n < 2) throw DomainError("beta_schedule: n must be >= 2");
    const CriticalConstants c = constants_for(schedule.b);
    const long double nl = static_cast<long double>(n);
    const long double rt = std::sqrt(nl);
    const long double beta = c.kappa / rt - schedule.tau * c.kappa2 / (2 * nl) +
                             (c.kappa * c.eta * std::log(nl) + c.kappa * schedule.r) / (nl * rt);
    if (!(beta > 0)) throw DomainError("beta_schedule: formula yields beta <= 0");
    if (beta > 10) throw DomainError("beta_schedule: beta exceeds beta_max/2");
    return static_cast<double>(beta);
}

long double beta_for_variance_ext(const DisorderModel& model, long double x) {
    if (!(x >= 0)) throw DomainError("beta_for_variance: x must be >= 0");
    if (x == 0) return 0;
    const long double cap = model.beta_max() / 2;
    long double hi = 1e-6L;
    while (hi < cap && tilted_variance_impl<long double>(model, hi) < x) hi *= 2;
    if (hi > cap) hi = cap;
    if (tilted_variance_impl<long double>(model, hi) < x)
        throw DomainError("beta_for_variance: x exceeds the reachable variance range");
    long double lo = 0;
    for (int i = 0; i < 160 && hi - lo > 1e-21L * hi; ++i) {
        const long double mid = (lo + hi) / 2;
        (tilted_variance_impl<long double>(model, mid) < x ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

double beta_for_variance(const DisorderModel& model, double x) {
    return static_cast<double>(beta_for_variance_ext(model, x));
}

double initial_moment(const DisorderModel& model, double beta, int m) {
    if (m < 2) throw DomainError("initial_moment: m must be >= 2");
    if (m * std::fabs(beta) > model.beta_max())
        throw DomainError("initial_moment: m*|beta| exceeds beta_max");
    if (beta == 0) return 0;
    const mp_float bm(beta);
    std::vector<mp_float> lam(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) lam[k] = log_mgf_impl<mp_float>(model, k * bm);
    mp_float sum = 0;
    for (int k = 0; k <= m; ++k) {
        const mp_float term = mp_float(binomial(m, k).str()) * exp(lam[k] - k * lam[1]);
        sum += ((m - k) % 2 == 0) ? term : -term;
    }
    return static_cast<double>(sum);
}

VFormDiagnostic v_form_check(const DisorderModel& model, const BetaSchedule& schedule,
                             long long n) {
    const CriticalConstants c = constants_for(schedule.b);
    const long double beta = beta_schedule(schedule, n);
    const long double v = tilted_variance_impl<long double>(model, beta);
    const long double nl = static_cast<long double>(n);
    const long double target =
        static_cast<long double>(c.kappa2) *
        (1 / nl + (static_cast<long double>(c.eta) * std::log(nl) + schedule.r) / (nl * nl));
    const long double resid = v - target;
    VFormDiagnostic d;
    d.n = n;
    d.beta = static_cast<double>(beta);
    d.variance = static_cast<double>(v);
    d.target = static_cast<double>(target);
    d.residual = static_cast<double>(resid);
    d.scaled_n2 = static_cast<double>(resid * nl * nl);
    d.scaled_n32 = static_cast<double>(resid * nl * std::sqrt(nl));
    return d;
}

TwoPointExact exact_two_point(const DisorderModel& model, double beta, int bits) {
    switch (model.kind) {
        case DisorderKind::rademacher: {
            const Rational t = dyadic_round(std::tanh(beta), bits);
            const Rational half(1, 2);
            return TwoPointExact{Rational(1) + t, Rational(1) - t, half, half};
        }
        case DisorderKind::standardized_bernoulli: {
            const Rational p_hi(model.p);  // exact dyadic value of the double
            const Rational p_lo = Rational(1) - p_hi;
            const double s = std::sqrt(model.p * (1 - model.p));
            const double x1 = (1 - model.p) / s;
            const double lam = log_mgf(model, beta);
            const Rational w_hi = dyadic_round(std::exp(beta * x1 - lam), bits);
            const Rational w_lo = (Rational(1) - p_hi * w_hi) / p_lo;
            if (w_lo <= 0)
                throw DomainError("exact_two_point: rounded weights leave no positive complement");
            return TwoPointExact{w_hi, w_lo, p_hi, p_lo};
        }
        default:
            throw DomainError("exact_two_point: model is not a two-point law");
    }
}

}  // namespace dpoly
