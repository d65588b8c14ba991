#pragma once

#include "dpoly/errors.hpp"
#include "dpoly/rational.hpp"

#include <cmath>

namespace dpoly {

struct BranchingParams {
    int b = 2;
    int s = 2;

    BranchingParams() = default;
    BranchingParams(int b_, int s_) : b(b_), s(s_) {
        if (b < 2 || s < 2) throw DomainError("BranchingParams: b and s must be >= 2");
    }
    static BranchingParams critical(int b_) { return BranchingParams(b_, b_); }

    bool is_critical() const { return b == s; }
    void require_critical(const char* op) const {
        if (!is_critical())
            throw DomainError(std::string(op) + ": requires s = b (critical branching)");
    }
};

struct CriticalConstants {
    double kappa;    // sqrt(2/(b-1))
    double eta;      // (b+1)/(3(b-1))
    double kappa2;   // 2/(b-1), exact in binary floating point for b-1 | 2^k grids; kept as a field to avoid re-squaring
};

inline CriticalConstants critical_constants(const BranchingParams& p) {
    const double k2 = 2.0 / (p.b - 1);
    return CriticalConstants{std::sqrt(k2), (p.b + 1) / (3.0 * (p.b - 1)), k2};
}

inline Rational kappa2_exact(int b) { return Rational(2, b - 1); }
inline Rational eta_exact(int b) { return Rational(b + 1, 3 * (b - 1)); }

enum class FloatKind { binary64, extended };

// Numerical policy for ladder iterations and series truncation. "extended"
// runs the long iterations in 80-bit long double; results are reported as
// double either way.
struct PrecisionPolicy {
    FloatKind float_kind = FloatKind::extended;
    int mantissa_bits = 64;             // informative; extended = x87 long double here
    double tol_abs = 1e-10;
    double tol_rel = 1e-8;
    int ladder_max_exponent = 20;       // largest k with n = 2^k attempted
    double series_tail_tol = 1e-12;

    void validate() const {
        if (tol_abs <= 0 || tol_rel <= 0 || series_tail_tol <= 0)
            throw DomainError("PrecisionPolicy: tolerances must be positive");
        if (ladder_max_exponent < 8 || ladder_max_exponent > 30)
            throw DomainError("PrecisionPolicy: ladder_max_exponent must be in [8, 30]");
    }
};

inline const PrecisionPolicy& default_policy() {
    static const PrecisionPolicy p{};
    return p;
}

}  // namespace dpoly
