#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace dpoly {

// Both aliases disable deferred-evaluation expression objects: with et_on,
// an operator result bound by a deduced return type or auto references its
// operands, which may already be destroyed by the time it is evaluated.
// et_off makes every operator return a materialized value.
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline BigInt binomial(long n, long k) {
    if (k < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    BigInt r = 1;
    for (long i = 0; i < k; ++i) {
        r *= (n - i);
        r /= (i + 1);  // exact: r is always a binomial prefix
    }
    return r;
}

inline BigInt factorial(long n) {
    BigInt r = 1;
    for (long i = 2; i <= n; ++i) r *= i;
    return r;
}

inline Rational rat_pow(Rational base, long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("rat_pow: 0^negative");
        base = Rational(denominator(base), numerator(base));
        e = -e;
    }
    Rational r = 1;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline double to_double(const Rational& q) { return q.convert_to<double>(); }
inline long double to_long_double(const Rational& q) { return q.convert_to<long double>(); }

// "num/den" with den omitted when 1; the denominator is kept positive by
// the rational normalization.
inline std::string to_fraction_string(const Rational& q) {
    std::string s = numerator(q).str();
    if (denominator(q) != 1) s += "/" + denominator(q).str();
    return s;
}

// Parses "num" or "num/den".
inline Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(BigInt(s));
    return Rational(BigInt(s.substr(0, slash)), BigInt(s.substr(slash + 1)));
}

// Nearest rational with the given power-of-two denominator. Used where an
// irrational quantity must enter an exact-arithmetic pipeline: the surrogate
// is exact from then on.
inline Rational dyadic_round(double x, int bits = 40) {
    BigInt den = BigInt(1) << bits;
    long double scaled = static_cast<long double>(x) * static_cast<long double>(1ULL << bits);
    BigInt num = static_cast<long long>(scaled >= 0 ? scaled + 0.5L : scaled - 0.5L);
    return Rational(num, den);
}

}  // namespace dpoly
