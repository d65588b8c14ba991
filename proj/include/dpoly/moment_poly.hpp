#pragma once

#include "dpoly/polynomial.hpp"

namespace dpoly {

// P_m together with its structural split P_m = (1/b^{m-2}) y_m + y_m U_m + V_m.
struct MomentPolynomials {
    int b = 2;
    int m = 2;
    SparsePolynomial p{2};
    SparsePolynomial u{2};
    SparsePolynomial v{2};
};

// Exact moment-recursion polynomial: with mu_k = 1 + sum_{i=2}^k C(k,i) y_i
// and e_p = sum_k C(p,k)(-1)^{p-k} mu_k^b,
//   P_m = b^{-m} sum_{p_1+..+p_b=m} multinomial(m; p) prod_i e_{p_i},
// pruning parts equal to 1 (e_1 = 0). Practical caps m <= 12, b <= 6.
SparsePolynomial build_pm(int b, int m);

// Splits P_m; StructureError if the linear slot is not exactly
// (1/b^{m-2}) y_m or the y_m-division leaves a remainder.
MomentPolynomials split_uv(const SparsePolynomial& pm, int b, int m);

// Cached build + split.
const MomentPolynomials& moment_polynomials(int b, int m);

// Structural facts about P_m checked in one sweep.
struct PmStructureReport {
    int b = 0;
    int m = 0;
    bool no_constant = false;
    bool linear_term_ok = false;
    bool nonnegative = false;
    int degree = 0;
    int expected_degree = 0;
    bool degree_ok = false;
    bool v_weights_ok = false;
    bool u_weights_ok = false;
    bool reassembly_ok = false;

    bool all_ok() const {
        return no_constant && linear_term_ok && nonnegative && degree_ok &&
               v_weights_ok && u_weights_ok && reassembly_ok;
    }
};

PmStructureReport structure_check(int b, int m);
PmStructureReport structure_check(const MomentPolynomials& mp);

// Leading-coefficient identity for even m: substituting y_{2j} = c_{2j} x^j
// (standard normal even moments) and y_odd = 0 into V_m, the x^{m/2}
// coefficient must equal m!/b^m times the t^m coefficient of
// (1 + sum_{1<=j<m/2} c_{2j} t^{2j}/(2j)!)^{b^2}. Returns route1 - route2.
Rational leading_coefficient_check(int b, int m);

// Same identity with the c_{2j} kept symbolic: compares the even-weight-m
// part of V_m against the generating-polynomial expansion term by term.
bool leading_generating_identity(int b, int m);

// Test hook: returns a copy with the idx-th term's coefficient (in graded-lex
// order) shifted by delta; used as a negative control for structure checks.
SparsePolynomial with_perturbed_coefficient(const SparsePolynomial& p, std::size_t idx,
                                            const Rational& delta);

}  // namespace dpoly
