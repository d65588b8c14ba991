#include <doctest.h>

#include <cmath>

#include "dpoly/maps.hpp"
#include "dpoly/potential.hpp"

using namespace dpoly;

TEST_CASE("squared-orbit sum satisfies its one-step relation") {
    // S(M(x)) = M(x)^2 + S(x): the inverse orbit of M(x) is M(x) followed by
    // the inverse orbit of x. Checks prefix and tail bookkeeping together.
    for (int b : {2, 3}) {
        const BranchingParams p(b, b);
        for (double x : {0.05, 0.3, 1.0}) {
            const double mx = m_map(p, x);
            CHECK(s_series(p, mx) ==
                  doctest::Approx(mx * mx + s_series(p, x)).epsilon(1e-11));
        }
    }
}

TEST_CASE("correction sum reference values at b = 2") {
    // 50-digit arithmetic references for the inverse-orbit weight sum.
    const BranchingParams p(2, 2);
    CHECK(f_series(p, 1.0) ==
          doctest::Approx(-0.19441666356880560218).epsilon(2e-11));
    CHECK(f_series(p, 0.05) ==
          doctest::Approx(-0.012297131329165568584).epsilon(2e-11));
    CHECK(f_series(p, 1.9) ==
          doctest::Approx(-0.317236468861599352).epsilon(2e-11));
}

TEST_CASE("potential drops by exactly one per map step") {
    for (int b : {2, 3}) {
        const BranchingParams p(b, b);
        double x = 0.04;
        for (int k = 0; k < 3; ++k) {
            const double gx = g_func(p, x);
            const double gmx = g_func(p, m_map(p, x));
            CHECK(gmx == doctest::Approx(gx - 1.0).epsilon(1e-10));
            x = m_map(p, x);
        }
    }
}

TEST_CASE("potential is strictly decreasing on its working range") {
    const BranchingParams p(2, 2);
    double prev = g_func(p, 0.01);
    for (double x : {0.05, 0.1, 0.5, 1.0, 2.0}) {
        const double g = g_func(p, x);
        CHECK(g < prev);
        prev = g;
    }
    CHECK(g_monotone_threshold(p) >= 2.0);
}

TEST_CASE("inverse returns the original argument") {
    for (int b : {2, 3}) {
        const BranchingParams p(b, b);
        for (double x : {0.002, 0.05, 0.3, 1.0}) {
            const double y = g_func(p, x);
            CHECK(g_inverse(p, y) == doctest::Approx(x).epsilon(1e-9));
        }
    }
}

TEST_CASE("asymptotic seed approaches the inverse for deep arguments") {
    const BranchingParams p(2, 2);
    for (double y : {100.0, 400.0}) {
        const double exact = g_inverse(p, y);
        const double seed = g_inverse_seed(p, y);
        // Next correction is O(log^2 y / y^3) relative to kappa^2/y.
        CHECK(std::fabs(seed - exact) * y * y * y / (std::log(y) * std::log(y)) < 10.0);
    }
}
