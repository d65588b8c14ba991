#include <doctest.h>

#include "dpoly/polynomial.hpp"

using namespace dpoly;

namespace {

// (y_2 + 2)(y_2 - 2) built termwise for product checks.
SparsePolynomial sample_quadratic(int m_max) {
    SparsePolynomial a = SparsePolynomial::variable(m_max, 2) +
                         SparsePolynomial::constant(m_max, 2);
    SparsePolynomial b = SparsePolynomial::variable(m_max, 2) -
                         SparsePolynomial::constant(m_max, 2);
    return a * b;
}

}  // namespace

TEST_CASE("arithmetic and cancellation keep the term map normalized") {
    const SparsePolynomial q = sample_quadratic(3);
    // y_2^2 - 4: the cross terms cancel exactly.
    CHECK(q.terms().size() == 2);
    CHECK(q.total_degree() == 2);

    SparsePolynomial z = q - q;
    CHECK(z.is_zero());
    CHECK(z.total_degree() == 0);

    SparsePolynomial scaled = q;
    scaled *= Rational(0);
    CHECK(scaled.is_zero());
}

TEST_CASE("pow expands binomially") {
    const int m_max = 3;
    SparsePolynomial one_plus = SparsePolynomial::constant(m_max, 1) +
                                SparsePolynomial::variable(m_max, 2);
    const SparsePolynomial p = one_plus.pow(4);
    // Coefficients 1 4 6 4 1 on y_2^k.
    REQUIRE(p.terms().size() == 5);
    std::vector<Rational> want{1, 4, 6, 4, 1};
    int k = 0;
    for (const auto& [e, c] : p.terms()) {
        CHECK(e[0] == k);
        CHECK(c == want[k]);
        ++k;
    }
}

TEST_CASE("partial derivative tracks exponents and coefficients") {
    // d/dy_3 (y_2 y_3^2 + y_3) = 2 y_2 y_3 + 1
    SparsePolynomial p(4);
    p.add_term({1, 2, 0}, Rational(1));
    p.add_term({0, 1, 0}, Rational(1));
    const SparsePolynomial d = p.partial(3);
    SparsePolynomial want(4);
    want.add_term({1, 1, 0}, Rational(2));
    want.add_term({0, 0, 0}, Rational(1));
    CHECK(d == want);

    CHECK_THROWS_AS(p.partial(5), DomainError);
}

TEST_CASE("evaluation agrees between rational and double paths") {
    SparsePolynomial p(4);
    p.add_term({2, 0, 0}, Rational(3, 2));
    p.add_term({0, 1, 1}, Rational(-1, 4));
    p.add_term({0, 0, 0}, Rational(7));

    const std::vector<Rational> xq{Rational(1, 3), Rational(2), Rational(-3, 5)};
    const Rational exact = p.eval(xq);
    // 3/2 * 1/9 - 1/4 * 2 * (-3/5) + 7 = 1/6 + 3/10 + 7 = 112/15
    CHECK(exact == Rational(112, 15));

    const std::vector<double> xd{1.0 / 3.0, 2.0, -0.6};
    CHECK(p.eval(xd) == doctest::Approx(to_double(exact)).epsilon(1e-14));

    CHECK_THROWS_AS(p.eval(std::vector<double>{1.0}), DomainError);
}

TEST_CASE("graded-lex order sorts by total degree first") {
    SparsePolynomial p(4);
    p.add_term({0, 0, 1}, Rational(1));  // y_4, degree 1, weight 4
    p.add_term({2, 0, 0}, Rational(1));  // y_2^2, degree 2, weight 4
    p.add_term({1, 0, 0}, Rational(1));  // y_2, degree 1, weight 2
    std::vector<Monomial> order;
    for (const auto& [e, c] : p.terms()) order.push_back(e);
    REQUIRE(order.size() == 3);
    CHECK(order[0] == Monomial{0, 0, 1});
    CHECK(order[1] == Monomial{1, 0, 0});
    CHECK(order[2] == Monomial{2, 0, 0});
}

TEST_CASE("weights count variable indices, not exponents") {
    CHECK(SparsePolynomial::monomial_weight({1, 1, 0}) == 5);   // y_2 y_3
    CHECK(SparsePolynomial::monomial_weight({0, 0, 2}) == 8);   // y_4^2
    SparsePolynomial p(4);
    p.add_term({1, 1, 0}, Rational(1));
    p.add_term({0, 0, 2}, Rational(1));
    CHECK(p.min_weight() == 5);
}

TEST_CASE("compiled form evaluates identically to the sparse form") {
    const SparsePolynomial q = sample_quadratic(4);
    const CompiledPoly<double> cd(q);
    const CompiledPoly<long double> cl(q);
    const std::vector<double> xd{0.37, -1.25, 0.0};
    const std::vector<long double> xl{0.37L, -1.25L, 0.0L};
    CHECK(cd.eval(xd.data()) == q.eval(xd));
    CHECK(static_cast<double>(cl.eval(xl.data())) ==
          doctest::Approx(q.eval(xd)).epsilon(1e-16));
}

TEST_CASE("mixed variable sets are rejected") {
    SparsePolynomial a(3), b(4);
    CHECK_THROWS_AS(a + b, DomainError);
    CHECK_THROWS_AS(a * b, DomainError);
    CHECK_THROWS_AS(a.add_term({0, 0, 0}, Rational(1)), DomainError);
}
