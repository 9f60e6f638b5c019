#include "mzuq/chaos_basis.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace mzuq;
using namespace mzuq::testing;

TEST_SUITE("chaos_basis") {

TEST_CASE("legendre values at sample points") {
    CHECK(legendre_eval(0, 0.7) == 1.0);
    CHECK(legendre_eval(1, -0.3) == doctest::Approx(-0.3).epsilon(1e-15));
    CHECK(legendre_eval(2, 0.5) == doctest::Approx(-0.125).epsilon(1e-15));
}

TEST_CASE("legendre agrees with the explicit monomial form") {
    for (int n = 0; n <= 12; ++n) {
        const auto coeffs = legendre_monomials(n);
        for (double x : {-1.0, -0.83, -0.2, 0.0, 0.35, 0.91, 1.0}) {
            double expected = 0.0;
            for (std::size_t k = coeffs.size(); k-- > 0;) expected = expected * x + coeffs[k];
            CHECK(legendre_eval(n, x) == doctest::Approx(expected).epsilon(1e-12));
        }
        CHECK(legendre_eval(n, 1.0) == doctest::Approx(1.0));
    }
}

TEST_CASE("legendre derivative matches a centered difference") {
    for (int n = 1; n <= 8; ++n) {
        const double x = 0.37;
        const double h = 1e-6;
        const double fd = (legendre_eval(n, x + h) - legendre_eval(n, x - h)) / (2 * h);
        const auto v = legendre_eval_with_derivative(n, x);
        CHECK(v.value == doctest::Approx(legendre_eval(n, x)).epsilon(1e-14));
        CHECK(v.derivative == doctest::Approx(fd).epsilon(1e-7));
    }
}

TEST_CASE("legendre rejects orders beyond the supported range") {
    CHECK_THROWS_AS(legendre_eval(kMaxLegendreOrder + 1, 0.0), std::out_of_range);
    CHECK_THROWS_AS(legendre_eval(-1, 0.0), std::out_of_range);
}

TEST_CASE("small gauss rules") {
    const auto one = gauss_legendre_rule(1);
    REQUIRE(one.size() == 1);
    CHECK(one.nodes[0] == doctest::Approx(0.0));
    CHECK(one.weights[0] == doctest::Approx(2.0));

    const auto two = gauss_legendre_rule(2);
    REQUIRE(two.size() == 2);
    CHECK(two.nodes[0] == doctest::Approx(-0.57735026919).epsilon(1e-11));
    CHECK(two.nodes[1] == doctest::Approx(0.57735026919).epsilon(1e-11));
    CHECK(two.weights[0] == doctest::Approx(1.0));
    CHECK(two.integrate([](double x) { return x * x; }) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

    const auto three = gauss_legendre_rule(3);
    REQUIRE(three.size() == 3);
    CHECK(three.nodes[0] == doctest::Approx(-0.77459666924).epsilon(1e-11));
    CHECK(std::abs(three.nodes[1]) < 1e-15);
    CHECK(three.weights[0] == doctest::Approx(5.0 / 9.0));
    CHECK(three.weights[1] == doctest::Approx(8.0 / 9.0));
    CHECK(three.integrate([](double x) { return x * x * x * x; }) == doctest::Approx(0.4).epsilon(1e-15));
}

TEST_CASE("gauss rule is exact up to degree 2n-1 and not beyond") {
    for (int n = 1; n <= 12; ++n) {
        const auto rule = gauss_legendre_rule(n);
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        for (int deg = 0; deg <= 2 * n - 1; ++deg) {
            const double exact = deg % 2 == 0 ? 2.0 / (deg + 1) : 0.0;
            const double got = rule.integrate([deg](double x) { return std::pow(x, deg); });
            CHECK(std::abs(got - exact) < 1e-13);
        }
        const int deg = 2 * n;
        const double got = rule.integrate([deg](double x) { return std::pow(x, deg); });
        CHECK(std::abs(got - 2.0 / (deg + 1)) > 1e-10);
    }
}

TEST_CASE("legendre polynomials are orthogonal under the rule") {
    const auto rule = gauss_legendre_rule(16);
    for (int a = 0; a < 10; ++a)
        for (int b = 0; b < 10; ++b) {
            const double ip = 0.5 * rule.integrate([&](double x) { return legendre_eval(a, x) * legendre_eval(b, x); });
            const double expected = a == b ? 1.0 / (2 * a + 1) : 0.0;
            CHECK(std::abs(ip - expected) < 1e-14);
        }
}

TEST_CASE("triple tensor named values") {
    const auto c = triple_product_tensor(7);
    CHECK(c(0, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c(1, 1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(c(0, 1, 1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c(1, 2, 0) == 0.0);
    CHECK(c(1, 2, 1) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("triple tensor matches exact polynomial moments") {
    const int m = 7;
    const auto c = triple_product_tensor(m);
    for (int l = 0; l < m; ++l)
        for (int mm = 0; mm < m; ++mm)
            for (int r = 0; r < m; ++r) CHECK(std::abs(c(l, mm, r) - exact_triple(l, mm, r)) < 1e-12);
}

TEST_CASE("triple tensor sparsity and symmetry") {
    const int m = 7;
    const auto c = triple_product_tensor(m);
    std::size_t expected_nonzero = 0;
    for (int l = 0; l < m; ++l)
        for (int mm = 0; mm < m; ++mm)
            for (int r = 0; r < m; ++r) {
                const bool triangle = r <= l + mm && l <= mm + r && mm <= l + r;
                const bool even = (l + mm + r) % 2 == 0;
                CHECK(TripleTensor::structurally_nonzero(l, mm, r) == (triangle && even));
                if (triangle && even) {
                    ++expected_nonzero;
                    CHECK(c(l, mm, r) > 0.0);
                } else {
                    CHECK(c(l, mm, r) == 0.0);
                }
                CHECK(c(l, mm, r) == doctest::Approx(c(mm, l, r)).epsilon(1e-14));
                // c_lmr / (2r+1) is the fully symmetric E[L_l L_m L_r].
                CHECK((2 * l + 1) * c(l, mm, r) == doctest::Approx((2 * r + 1) * c(r, mm, l)).epsilon(1e-13));
            }
    CHECK(c.nonzeros().size() == expected_nonzero);
    for (const auto& e : c.nonzeros()) CHECK(e.value == c(e.l, e.m, e.r));
}

TEST_CASE("quad tensor values and symmetry") {
    const auto d = quad_product_tensor(4);
    CHECK(d(0, 0, 0, 0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d(0, 0, 1, 1) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(d(1, 1, 1, 1) == doctest::Approx(0.2).epsilon(1e-14));
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int e = 0; e < 4; ++e)
                for (int f = 0; f < 4; ++f) {
                    CHECK(std::abs(d(a, b, e, f) - exact_quad(a, b, e, f)) < 1e-13);
                    CHECK(d(a, b, e, f) == d(f, a, e, b));
                }
}

} // TEST_SUITE
