#pragma once

#include <map>
#include <numeric>
#include <type_traits>
#include <utility>
#include <vector>

#include "dpoly/errors.hpp"
#include "dpoly/rational.hpp"

namespace dpoly {

// Exponent vector over the variables y_2..y_{m_max}: exps[i] is the
// exponent of y_{i+2}. Vectors are kept at full length var_count.
using Monomial = std::vector<int>;

// Graded lexicographic order: total degree first, then lexicographic on
// the exponent vector. Gives serialization a canonical term order.
struct GradedLex {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const int da = std::accumulate(a.begin(), a.end(), 0);
        const int db = std::accumulate(b.begin(), b.end(), 0);
        if (da != db) return da < db;
        return a < b;
    }
};

class SparsePolynomial {
  public:
    using TermMap = std::map<Monomial, Rational, GradedLex>;

    explicit SparsePolynomial(int m_max = 2) : m_max_(m_max) {
        if (m_max < 2) throw DomainError("SparsePolynomial: m_max must be >= 2");
    }

    static SparsePolynomial constant(int m_max, const Rational& c) {
        SparsePolynomial p(m_max);
        p.add_term(Monomial(p.var_count(), 0), c);
        return p;
    }

    // The variable y_index, index in [2, m_max].
    static SparsePolynomial variable(int m_max, int index) {
        SparsePolynomial p(m_max);
        Monomial e(p.var_count(), 0);
        if (index < 2 || index > m_max) throw DomainError("SparsePolynomial: variable out of range");
        e[index - 2] = 1;
        p.add_term(e, 1);
        return p;
    }

    int m_max() const { return m_max_; }
    int var_count() const { return m_max_ - 1; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    void add_term(const Monomial& exps, const Rational& coef) {
        if (static_cast<int>(exps.size()) != var_count())
            throw DomainError("SparsePolynomial: exponent vector length mismatch");
        if (coef == 0) return;
        auto [it, inserted] = terms_.emplace(exps, coef);
        if (!inserted) {
            it->second += coef;
            if (it->second == 0) terms_.erase(it);
        }
    }

    SparsePolynomial& operator+=(const SparsePolynomial& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }

    SparsePolynomial& operator-=(const SparsePolynomial& o) {
        check_same(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    SparsePolynomial operator+(const SparsePolynomial& o) const {
        SparsePolynomial r = *this;
        return r += o;
    }

    SparsePolynomial operator-(const SparsePolynomial& o) const {
        SparsePolynomial r = *this;
        return r -= o;
    }

    SparsePolynomial operator*(const SparsePolynomial& o) const {
        check_same(o);
        SparsePolynomial r(m_max_);
        for (const auto& [ea, ca] : terms_) {
            for (const auto& [eb, cb] : o.terms_) {
                Monomial e(var_count());
                for (int i = 0; i < var_count(); ++i) e[i] = ea[i] + eb[i];
                r.add_term(e, ca * cb);
            }
        }
        return r;
    }

    SparsePolynomial& operator*=(const Rational& c) {
        if (c == 0) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }

    SparsePolynomial pow(int e) const {
        if (e < 0) throw DomainError("SparsePolynomial: negative power");
        SparsePolynomial r = constant(m_max_, 1);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    // Partial derivative with respect to y_index.
    SparsePolynomial partial(int index) const {
        if (index < 2 || index > m_max_) throw DomainError("SparsePolynomial: variable out of range");
        SparsePolynomial r(m_max_);
        const int slot = index - 2;
        for (const auto& [e, c] : terms_) {
            if (e[slot] == 0) continue;
            Monomial d = e;
            d[slot] -= 1;
            r.add_term(d, c * e[slot]);
        }
        return r;
    }

    // Evaluation; `values` supplies y_2..y_{m_max} (longer vectors allowed,
    // extra entries ignored). T may be a float type or Rational.
    template <typename T>
    T eval(const std::vector<T>& values) const {
        if (static_cast<int>(values.size()) < var_count())
            throw DomainError("SparsePolynomial: too few values for evaluation");
        T sum = T(0);
        for (const auto& [e, c] : terms_) {
            T prod = coef_as<T>(c);
            for (int i = 0; i < var_count(); ++i)
                for (int k = 0; k < e[i]; ++k) prod *= values[i];
            sum += prod;
        }
        return sum;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [e, c] : terms_)
            d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
        return d;
    }

    // Weight of a monomial: sum of j * e_j over variables y_j.
    static int monomial_weight(const Monomial& e) {
        int w = 0;
        for (std::size_t i = 0; i < e.size(); ++i) w += static_cast<int>(i + 2) * e[i];
        return w;
    }

    // Minimum monomial weight; 0 for the zero polynomial or a constant term.
    int min_weight() const {
        int w = -1;
        for (const auto& [e, c] : terms_) {
            const int we = monomial_weight(e);
            if (w < 0 || we < w) w = we;
        }
        return w < 0 ? 0 : w;
    }

    bool has_constant_term() const {
        const Monomial zero(var_count(), 0);
        return terms_.count(zero) > 0;
    }

    bool all_coefficients_nonnegative() const {
        for (const auto& [e, c] : terms_)
            if (c < 0) return false;
        return true;
    }

    bool operator==(const SparsePolynomial& o) const {
        return m_max_ == o.m_max_ && terms_ == o.terms_;
    }
    bool operator!=(const SparsePolynomial& o) const { return !(*this == o); }

  private:
    template <typename T>
    static T coef_as(const Rational& c) {
        if constexpr (std::is_same_v<T, Rational>) {
            return c;
        } else if constexpr (std::is_same_v<T, long double>) {
            return to_long_double(c);
        } else {
            return static_cast<T>(to_double(c));
        }
    }

    void check_same(const SparsePolynomial& o) const {
        if (m_max_ != o.m_max_)
            throw DomainError("SparsePolynomial: operand variable sets differ");
    }

    int m_max_;
    TermMap terms_;
};

// Flattened representation for tight evaluation loops: nonzero exponents
// only, coefficients narrowed once at compile time.
template <typename T>
class CompiledPoly {
  public:
    CompiledPoly() = default;

    explicit CompiledPoly(const SparsePolynomial& p) : var_count_(p.var_count()) {
        for (const auto& [e, c] : p.terms()) {
            Term t;
            if constexpr (std::is_same_v<T, long double>) {
                t.coef = to_long_double(c);
            } else {
                t.coef = static_cast<T>(to_double(c));
            }
            for (int i = 0; i < p.var_count(); ++i)
                if (e[i] > 0) t.factors.emplace_back(i, e[i]);
            terms_.push_back(std::move(t));
        }
    }

    // values supplies y_2..: at least var_count entries.
    T eval(const T* values) const {
        T sum = T(0);
        for (const auto& t : terms_) {
            T prod = t.coef;
            for (const auto& [v, e] : t.factors) {
                T base = values[v];
                int k = e;
                T acc = T(1);
                while (k > 0) {
                    if (k & 1) acc *= base;
                    base *= base;
                    k >>= 1;
                }
                prod *= acc;
            }
            sum += prod;
        }
        return sum;
    }

    int var_count() const { return var_count_; }

  private:
    struct Term {
        T coef;
        std::vector<std::pair<int, int>> factors;
    };
    std::vector<Term> terms_;
    int var_count_ = 0;
};

}  // namespace dpoly
