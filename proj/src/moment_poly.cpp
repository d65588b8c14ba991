#include "dpoly/moment_poly.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <map>
#include <mutex>
#include <tuple>

namespace dpoly {

namespace {

constexpr int kMaxM = 12;
constexpr int kMaxB = 6;

// Ordered-tuple sum over (p_1..p_b) collapsed to partitions: parts sorted
// descending, each >= 2, padded with zeros; the arrangement count is
// b!/( (b-l)! * prod_{distinct value} count! ).
void enumerate_parts(int remaining, int max_part, int slots, std::vector<int>& parts,
                     const std::function<void(const std::vector<int>&)>& emit) {
    if (remaining == 0) {
        emit(parts);
        return;
    }
    if (slots == 0) return;
    for (int p = std::min(remaining, max_part); p >= 2; --p) {
        parts.push_back(p);
        enumerate_parts(remaining - p, p, slots - 1, parts, emit);
        parts.pop_back();
    }
}

BigInt arrangements(int b, const std::vector<int>& parts) {
    BigInt num = factorial(b);
    BigInt den = factorial(b - static_cast<int>(parts.size()));
    int run = 1;
    for (std::size_t i = 1; i <= parts.size(); ++i) {
        if (i < parts.size() && parts[i] == parts[i - 1]) {
            ++run;
        } else {
            den *= factorial(run);
            run = 1;
        }
    }
    return num / den;
}

BigInt multinomial(int m, const std::vector<int>& parts) {
    BigInt r = factorial(m);
    for (int p : parts) r /= factorial(p);
    return r;
}

}  // namespace

SparsePolynomial build_pm(int b, int m) {
    if (b < 2 || m < 2) throw DomainError("build_pm: requires b >= 2 and m >= 2");
    if (b > kMaxB || m > kMaxM) throw CapExceeded("build_pm: (b, m) beyond practical cap");

    // mu_k = E[W^k] expressed in centered moments, then mu_k^b = E[(prod W)^k]
    // across one branch, then e_p = E[(prod W - 1)^p].
    std::vector<SparsePolynomial> mu_pow_b;
    mu_pow_b.reserve(static_cast<std::size_t>(m) + 1);
    for (int k = 0; k <= m; ++k) {
        SparsePolynomial mu = SparsePolynomial::constant(m, 1);
        for (int i = 2; i <= k; ++i) {
            SparsePolynomial t = SparsePolynomial::variable(m, i);
            t *= Rational(binomial(k, i));
            mu += t;
        }
        mu_pow_b.push_back(mu.pow(b));
    }

    std::vector<SparsePolynomial> e;
    e.reserve(static_cast<std::size_t>(m) + 1);
    for (int p = 0; p <= m; ++p) {
        SparsePolynomial ep(m);
        for (int k = 0; k <= p; ++k) {
            SparsePolynomial t = mu_pow_b[k];
            Rational c(binomial(p, k));
            if ((p - k) % 2 != 0) c = -c;
            t *= c;
            ep += t;
        }
        e.push_back(std::move(ep));
    }

    SparsePolynomial pm(m);
    std::vector<int> parts;
    std::function<void(const std::vector<int>&)> emit = [&](const std::vector<int>& ps) {
        SparsePolynomial prod = SparsePolynomial::constant(m, 1);
        for (int p : ps) prod = prod * e[p];
        prod *= Rational(multinomial(m, ps) * arrangements(b, ps));
        pm += prod;
    };
    enumerate_parts(m, m, b, parts, emit);

    pm *= Rational(1) / rat_pow(Rational(b), m);
    return pm;
}

MomentPolynomials split_uv(const SparsePolynomial& pm, int b, int m) {
    if (pm.m_max() != m) throw DomainError("split_uv: polynomial m_max mismatch");
    MomentPolynomials out;
    out.b = b;
    out.m = m;
    out.p = pm;
    out.u = SparsePolynomial(m);
    out.v = SparsePolynomial(m);

    Monomial linear(pm.var_count(), 0);
    linear[m - 2] = 1;
    const Rational expect = Rational(1) / rat_pow(Rational(b), m - 2);

    bool saw_linear = false;
    const int slot = m - 2;
    for (const auto& [e, c] : pm.terms()) {
        if (e == linear) {
            if (c != expect)
                throw StructureError("split_uv: linear coefficient is not 1/b^(m-2)");
            saw_linear = true;
            continue;
        }
        if (e[slot] == 0) {
            out.v.add_term(e, c);
        } else {
            Monomial d = e;
            d[slot] -= 1;
            out.u.add_term(d, c);
        }
    }
    if (!saw_linear) throw StructureError("split_uv: linear term in y_m is missing");
    return out;
}

const MomentPolynomials& moment_polynomials(int b, int m) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, MomentPolynomials> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find({b, m});
    if (it == cache.end()) {
        MomentPolynomials mp = split_uv(build_pm(b, m), b, m);
        it = cache.emplace(std::make_pair(b, m), std::move(mp)).first;
    }
    return it->second;
}

PmStructureReport structure_check(const MomentPolynomials& mp) {
    const int b = mp.b, m = mp.m;
    PmStructureReport rep;
    rep.b = b;
    rep.m = m;
    rep.no_constant = !mp.p.has_constant_term();
    rep.nonnegative = mp.p.all_coefficients_nonnegative();
    rep.degree = mp.p.total_degree();
    rep.expected_degree = b * std::min(b, m / 2);
    rep.degree_ok = rep.degree == rep.expected_degree;

    // Linear slot: split_uv would have thrown otherwise; verify by
    // reassembly, which also checks the U/V complement.
    SparsePolynomial rebuilt = mp.v;
    const SparsePolynomial ym = SparsePolynomial::variable(m, m);
    SparsePolynomial lin = ym;
    lin *= Rational(1) / rat_pow(Rational(b), m - 2);
    rebuilt += lin;
    rebuilt += ym * mp.u;
    rep.reassembly_ok = rebuilt == mp.p;
    rep.linear_term_ok = rep.reassembly_ok;

    // Minimal V_m weight is m for every m >= 4: the all-singleton expansion
    // reaches any multiplicity partition of m into parts >= 2, so odd m >= 5
    // admits weight-m monomials too (V_5 contains y_2 y_3). Parity forces an
    // odd-index factor into any weight-m monomial when m is odd, which is
    // what the odd-moment decay rate actually uses. For m = 3 the variable
    // range alone forces weight >= 4.
    const int v_floor = (m == 3) ? m + 1 : m;
    rep.v_weights_ok = mp.v.is_zero() || mp.v.min_weight() >= v_floor;
    // y_m U_m weights >= m+2 is equivalent to U_m having no constant term.
    rep.u_weights_ok = !mp.u.has_constant_term();
    return rep;
}

PmStructureReport structure_check(int b, int m) {
    return structure_check(moment_polynomials(b, m));
}

namespace {

// Even moments of the standard normal: c_{2j} = (2j)! / (2^j j!).
Rational gaussian_even_moment(int j) {
    return Rational(factorial(2 * j)) / (rat_pow(Rational(2), j) * Rational(factorial(j)));
}

// t^m coefficient of (1 + sum_{1<=j<m/2} g_j t^{2j}/(2j)!)^(b^2), where the
// g_j are given as polynomials (constants are wrapped). Truncated exact
// univariate arithmetic.
std::vector<SparsePolynomial> generating_power(int b, int m,
                                               const std::vector<SparsePolynomial>& g) {
    const int order = m + 1;
    const int mmax = g.empty() ? 2 : g[0].m_max();
    std::vector<SparsePolynomial> base(order, SparsePolynomial(mmax));
    base[0] = SparsePolynomial::constant(mmax, 1);
    for (int j = 1; 2 * j <= m - 2; ++j) {
        SparsePolynomial coef = g[static_cast<std::size_t>(j) - 1];
        coef *= Rational(1) / Rational(factorial(2 * j));
        base[2 * j] = coef;
    }
    std::vector<SparsePolynomial> acc(order, SparsePolynomial(mmax));
    acc[0] = SparsePolynomial::constant(mmax, 1);
    for (int rep = 0; rep < b * b; ++rep) {
        std::vector<SparsePolynomial> next(order, SparsePolynomial(mmax));
        for (int i = 0; i < order; ++i) {
            if (acc[i].is_zero()) continue;
            for (int j = 0; i + j < order; j += 2) {
                if (base[j].is_zero()) continue;
                next[i + j] += acc[i] * base[j];
            }
        }
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

Rational leading_coefficient_check(int b, int m) {
    if (m % 2 != 0) throw DomainError("leading_coefficient_check: m must be even");
    const MomentPolynomials& mp = moment_polynomials(b, m);

    // Route 1: y_{2j} -> c_{2j} x^j, odd variables -> 0; collect x^{m/2}.
    Rational route1 = 0;
    for (const auto& [e, c] : mp.v.terms()) {
        bool odd_free = true;
        int xpow = 0;
        Rational value = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            const int var = static_cast<int>(i) + 2;
            if (var % 2 != 0) {
                odd_free = false;
                break;
            }
            xpow += (var / 2) * e[i];
            value *= rat_pow(gaussian_even_moment(var / 2), e[i]);
        }
        if (odd_free && 2 * xpow == m) route1 += value;
    }

    // Route 2: exact differentiation of the generating function.
    std::vector<SparsePolynomial> g;
    for (int j = 1; 2 * j <= m - 2; ++j)
        g.push_back(SparsePolynomial::constant(m, gaussian_even_moment(j)));
    const std::vector<SparsePolynomial> series = generating_power(b, m, g);
    Rational route2 = 0;
    if (!series[m].is_zero()) {
        const Monomial zero(series[m].var_count(), 0);
        route2 = series[m].terms().at(zero);
    }
    route2 *= Rational(factorial(m)) / rat_pow(Rational(b), m);

    return route1 - route2;
}

bool leading_generating_identity(int b, int m) {
    if (m % 2 != 0) throw DomainError("leading_generating_identity: m must be even");
    const MomentPolynomials& mp = moment_polynomials(b, m);

    // Even-weight-m part of V_m, symbolically.
    SparsePolynomial part(m);
    for (const auto& [e, c] : mp.v.terms()) {
        bool odd_free = true;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0 && (static_cast<int>(i) + 2) % 2 != 0) {
                odd_free = false;
                break;
            }
        }
        if (odd_free && SparsePolynomial::monomial_weight(e) == m) part.add_term(e, c);
    }

    std::vector<SparsePolynomial> g;
    for (int j = 1; 2 * j <= m - 2; ++j) g.push_back(SparsePolynomial::variable(m, 2 * j));
    std::vector<SparsePolynomial> series = generating_power(b, m, g);
    SparsePolynomial gen = series[m];
    gen *= Rational(factorial(m)) / rat_pow(Rational(b), m);

    return part == gen;
}

SparsePolynomial with_perturbed_coefficient(const SparsePolynomial& p, std::size_t idx,
                                            const Rational& delta) {
    if (idx >= p.terms().size())
        throw DomainError("with_perturbed_coefficient: term index out of range");
    SparsePolynomial out = p;
    auto it = p.terms().begin();
    std::advance(it, static_cast<long>(idx));
    out.add_term(it->first, delta);
    return out;
}

}  // namespace dpoly
