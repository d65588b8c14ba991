#include "dpoly/maps.hpp"

namespace dpoly {

double m_map(const BranchingParams& p, double x) {
    if (x < 0) throw DomainError("m_map: x must be >= 0");
    return map_step<double>(p.b, p.s, x);
}

double m_inverse(const BranchingParams& p, double x) {
    p.require_critical("m_inverse");
    if (x < 0) throw DomainError("m_inverse: x must be >= 0");
    return map_inverse_step<double>(p.b, x);
}

double m_iterate(const BranchingParams& p, double x, long n) {
    if (x < 0) throw DomainError("m_iterate: x must be >= 0");
    if (n < 0) p.require_critical("m_iterate");
    double v = x;
    if (n > 0) {
        for (long i = 0; i < n; ++i) {
            v = map_step<double>(p.b, p.s, v);
            if (!std::isfinite(v))
                throw Overflow("m_iterate: iterate left the double range", i + 1);
        }
    } else {
        for (long i = 0; i < -n; ++i) v = map_inverse_step<double>(p.b, v);
    }
    return v;
}

double m_map_derivative(const BranchingParams& p, double x) {
    if (x < 0) throw DomainError("m_map_derivative: x must be >= 0");
    return p.s * std::exp((p.s - 1) * std::log1p(x)) / p.b;
}

}  // namespace dpoly
