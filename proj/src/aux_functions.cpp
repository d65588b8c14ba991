#include "dpoly/aux_functions.hpp"

#include "dpoly/maps.hpp"

#include <cmath>

namespace dpoly {

namespace {

double eval_series_prefix(const RationalSeries& s, double x, int degree) {
    double acc = 0;
    for (int i = degree; i >= 0; --i)
        acc = acc * x + to_double(s.c[static_cast<std::size_t>(i)]);
    return acc;
}

}  // namespace

double aux_f(const BranchingParams& p, double y) {
    p.require_critical("aux_f");
    if (p.b <= 3) return 0.0;
    // Degree b-4 polynomial with exact coefficients; Horner in double.
    const auto& cs = correction_series(p.b);
    double r = 0;
    for (int i = p.b - 4; i >= 0; --i)
        r = r * y + to_double(cs.f.c[static_cast<std::size_t>(i)]);
    return r;
}

double aux_h(const BranchingParams& p, double y) {
    p.require_critical("aux_h");
    if (!(y > 0) || y > 1) throw DomainError("aux_h: argument must be in (0, 1]");
    if (y < kAuxSeriesSwitch)
        return eval_series_prefix(correction_series(p.b).h, y, kAuxSeriesDegree);
    const CriticalConstants c = critical_constants(p);
    const double My = map_step<double>(p.b, p.b, c.kappa2 * y);
    const double invA = c.kappa2 * y / My;      // kappa^2 y / M(kappa^2 y)
    const double rho = (1 - y) * invA;
    return c.eta * (rho - 1) / y + invA - aux_f(p, y) * rho;
}

double aux_h_hat(const BranchingParams& p, double x) {
    p.require_critical("aux_h_hat");
    const CriticalConstants c = critical_constants(p);
    if (!(x > 0) || x > c.kappa2)
        throw DomainError("aux_h_hat: argument must be in (0, kappa^2]");
    if (x < kAuxSeriesSwitch)
        return eval_series_prefix(correction_series(p.b).h_hat, x, kAuxSeriesDegree);
    const double Mx = map_step<double>(p.b, p.b, x);
    // log(M(x)/x) via log1p((M-x)/x): keeps accuracy while M is near x.
    const double log_ratio = std::log1p((Mx - x) / x);
    return (c.eta / (x * x)) * (x / c.kappa2 - log_ratio) + aux_h(p, x / c.kappa2) / (c.kappa2 * c.kappa2);
}

AuxValues aux_functions(const BranchingParams& p, double x) {
    p.require_critical("aux_functions");
    const CriticalConstants c = critical_constants(p);
    const double hi = std::min(1.0, c.kappa2);
    if (!(x > 0) || x > hi)
        throw DomainError("aux_functions: argument must be in (0, min(1, kappa^2)]");
    return AuxValues{aux_f(p, x), aux_h(p, x), aux_h_hat(p, x)};
}

}  // namespace dpoly
