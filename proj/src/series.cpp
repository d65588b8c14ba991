#include "dpoly/series.hpp"

#include <map>
#include <mutex>

namespace dpoly {

RationalSeries operator+(const RationalSeries& a, const RationalSeries& b) {
    RationalSeries r(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i < r.order(); ++i) r.c[i] = a.c[i] + b.c[i];
    return r;
}

RationalSeries operator-(const RationalSeries& a, const RationalSeries& b) {
    RationalSeries r(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i < r.order(); ++i) r.c[i] = a.c[i] - b.c[i];
    return r;
}

RationalSeries operator*(const RationalSeries& a, const RationalSeries& b) {
    RationalSeries r(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i < r.order(); ++i)
        for (std::size_t j = 0; i + j < r.order() && j < b.order(); ++j)
            if (!a.c[i].is_zero() && !b.c[j].is_zero()) r.c[i + j] += a.c[i] * b.c[j];
    return r;
}

RationalSeries operator*(const Rational& k, const RationalSeries& a) {
    RationalSeries r = a;
    for (auto& x : r.c) x *= k;
    return r;
}

RationalSeries series_recip(const RationalSeries& a) {
    if (a.c[0].is_zero()) throw DomainError("series_recip: zero constant term");
    RationalSeries r(a.order());
    r.c[0] = Rational(1) / a.c[0];
    for (std::size_t n = 1; n < a.order(); ++n) {
        Rational acc = 0;
        for (std::size_t k = 1; k <= n && k < a.order(); ++k) acc += a.c[k] * r.c[n - k];
        r.c[n] = -acc / a.c[0];
    }
    return r;
}

RationalSeries series_log1p(const RationalSeries& u) {
    if (!u.c[0].is_zero()) throw DomainError("series_log1p: nonzero constant term");
    // log(1+u) = sum_{k>=1} (-1)^{k+1} u^k / k; u^k has valuation >= k,
    // so the sum is finite at fixed truncation order.
    RationalSeries acc(u.order());
    RationalSeries upow = u;
    for (std::size_t k = 1; k < u.order(); ++k) {
        Rational sign = (k % 2 == 1) ? Rational(1) : Rational(-1);
        Rational coef = sign / Rational(static_cast<long>(k));
        for (std::size_t i = 0; i < u.order(); ++i) acc.c[i] += coef * upow.c[i];
        if (k + 1 < u.order()) upow = upow * u;
    }
    return acc;
}

RationalSeries series_shift_down(const RationalSeries& a, std::size_t k) {
    for (std::size_t i = 0; i < k && i < a.order(); ++i)
        if (!a.c[i].is_zero())
            throw DomainError("series_shift_down: nonzero coefficient below the shift");
    RationalSeries r(a.order());
    for (std::size_t i = k; i < a.order(); ++i) r.c[i - k] = a.c[i];
    return r;
}

Rational series_eval(const RationalSeries& a, const Rational& y) {
    Rational acc = 0;
    for (std::size_t i = a.order(); i-- > 0;) acc = acc * y + a.c[i];
    return acc;
}

CorrectionSeries build_correction_series(int b, std::size_t order) {
    if (b < 2) throw DomainError("build_correction_series: b >= 2 required");
    const Rational k2 = kappa2_exact(b);
    const Rational eta = eta_exact(b);

    // A(y) = M(kappa^2 y)/(kappa^2 y) = sum_{k=1}^{b} (C(b,k)/b) kappa^{2(k-1)} y^{k-1}.
    RationalSeries A(order);
    for (int k = 1; k <= b; ++k) {
        if (static_cast<std::size_t>(k - 1) >= order) break;
        A.c[k - 1] = Rational(binomial(b, k), b) * rat_pow(k2, k - 1);
    }

    // f(y) = sum_{k=4}^{b} (C(b,k)/b) kappa^{2(k-1)} y^{k-4}: the tail of A
    // beyond its quadratic part, rescaled. Zero for b <= 3.
    RationalSeries f(order);
    for (int k = 4; k <= b; ++k) {
        if (static_cast<std::size_t>(k - 4) >= order) break;
        f.c[k - 4] = Rational(binomial(b, k), b) * rat_pow(k2, k - 1);
    }

    // invA = kappa^2 y / M(kappa^2 y); rho(y) = (1-y) * invA.
    RationalSeries invA = series_recip(A);
    RationalSeries one_minus_y(order);
    one_minus_y.c[0] = 1;
    one_minus_y.c[1] = -1;
    RationalSeries rho = one_minus_y * invA;

    // h(y) = eta*(rho-1)/y + invA - f*rho.
    // (The middle term is the combined 1/(1-y) * rho, finite at y = 1.)
    RationalSeries rho_m1 = rho - RationalSeries::constant(1, order);
    RationalSeries h = eta * series_shift_down(rho_m1, 1) + invA - f * rho;

    // Exactness anchor: invA must equal 1 - y + eta y^2 + y^3 h(y).
    {
        RationalSeries rhs(order);
        rhs.c[0] = 1;
        rhs.c[1] = -1;
        rhs.c[2] = eta;
        for (std::size_t i = 3; i < order; ++i) rhs.c[i] = h.c[i - 3];
        for (std::size_t i = 0; i < order; ++i)
            if (invA.c[i] != rhs.c[i])
                throw StructureError("correction series: defining identity failed");
    }

    // h_hat(kappa^2 y) = [eta*(y - log A(y))/y^2 + h(y)] / kappa^4.
    RationalSeries y_only(order);
    y_only.c[1] = 1;
    RationalSeries logA = series_log1p(A - RationalSeries::constant(1, order));
    RationalSeries num = y_only - logA;  // valuation 2: A = 1 + y + O(y^2)
    RationalSeries hhat_y = Rational(1) / rat_pow(k2, 2) * (eta * series_shift_down(num, 2) + h);

    // Rescale to the unscaled argument: coefficient j picks up kappa^{-2j}.
    RationalSeries hhat_x(order);
    Rational scale = 1;
    for (std::size_t j = 0; j < order; ++j) {
        hhat_x.c[j] = hhat_y.c[j] * scale;
        scale /= k2;
    }

    return CorrectionSeries{b, std::move(f), std::move(h), std::move(hhat_x)};
}

const CorrectionSeries& correction_series(int b) {
    static std::mutex mu;
    static std::map<int, CorrectionSeries> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(b);
    if (it == cache.end()) it = cache.emplace(b, build_correction_series(b)).first;
    return it->second;
}

}  // namespace dpoly
