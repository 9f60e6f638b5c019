#include "mzuq/spectral_burgers.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <cmath>

using namespace mzuq;
using namespace mzuq::testing;

namespace {

constexpr Complex I(0.0, 1.0);

double weighted_inner(const PCField& du, const PCField& u) {
    double s = 0.0;
    for (int r = 0; r < u.n_orders(); ++r)
        for (int k = u.k_min(); k <= u.k_max(); ++k) s += (du(k, r) * std::conj(u(k, r))).real() / (2 * r + 1);
    return s;
}

double weighted_gradient(const PCField& u) {
    double s = 0.0;
    for (int r = 0; r < u.n_orders(); ++r)
        for (int k = u.k_min(); k <= u.k_max(); ++k) s += double(k) * k * std::norm(u(k, r)) / (2 * r + 1);
    return s;
}

PCField sine_field(int n_modes) {
    PCField u(n_modes, 1);
    u(1, 0) = -0.5 * I;
    u(-1, 0) = 0.5 * I;
    return u;
}

} // namespace

TEST_SUITE("spectral_burgers") {

TEST_CASE("initial field for (1 + xi) sin x") {
    const auto u = build_initial_field(8, 2, 1.0, 1.0);
    CHECK(u(1, 0) == -0.5 * I);
    CHECK(u(-1, 0) == 0.5 * I);
    CHECK(u(1, 1) == -0.5 * I);
    CHECK(u(-1, 1) == 0.5 * I);
    double rest = 0.0;
    for (int r = 0; r < 2; ++r)
        for (int k = u.k_min(); k <= u.k_max(); ++k)
            if (std::abs(k) != 1) rest += std::abs(u(k, r));
    CHECK(rest == 0.0);

    const auto det = build_initial_field(8, 2, 1.0, 0.0);
    CHECK(det(1, 0) == -0.5 * I);
    CHECK(det(1, 1) == 0.0);
    CHECK(det(-1, 1) == 0.0);

    CHECK_THROWS(build_initial_field(2, 2, 1.0, 1.0));
    CHECK_THROWS(build_initial_field(8, 1, 1.0, 1.0));
}

TEST_CASE("truncated convolution of the sine coefficients") {
    // Band [-2, 1]: index = k + 2.
    const std::vector<Complex> a = {0.0, 0.5 * I, 0.0, -0.5 * I};
    const auto conv = truncated_convolution(a, a);
    CHECK(std::abs(conv[2] - Complex(0.5, 0.0)) < 1e-15);
    CHECK(std::abs(conv[0] - Complex(-0.25, 0.0)) < 1e-15);
    CHECK(std::abs(conv[3]) < 1e-15);
}

TEST_CASE("truncated convolution against enumeration of pairs") {
    const auto u = random_real_field(12, 2, 11);
    const auto conv = truncated_convolution(u.order(0), u.order(1));
    for (int k = u.k_min(); k <= u.k_max(); ++k) {
        Complex expected = 0.0;
        for (int p = u.k_min(); p <= u.k_max(); ++p)
            if (in_band(k - p, 12)) expected += u(p, 0) * u(k - p, 1);
        CHECK(std::abs(conv[static_cast<std::size_t>(k + 6)] - expected) < 1e-13);
    }
}

TEST_CASE("rhs of deterministic sin x") {
    const auto c = triple_product_tensor(1);
    const auto du = full_rhs(sine_field(8), BurgersParams{0.0, 1.0, 1.0}, c);
    CHECK(std::abs(du(2, 0) - 0.25 * I) < 1e-15);
    CHECK(std::abs(du(-2, 0) + 0.25 * I) < 1e-15);
    CHECK(std::abs(du(0, 0)) == 0.0);
    CHECK(std::abs(du(1, 0)) < 1e-15);

    const auto viscous = full_rhs(sine_field(8), BurgersParams{0.03, 1.0, 1.0}, c);
    CHECK(std::abs(viscous(1, 0) - 0.015 * I) < 1e-15);
}

TEST_CASE("k = 0 row of the rhs vanishes") {
    const auto c = triple_product_tensor(4);
    const auto u = random_real_field(16, 4, 3);
    const auto du = full_rhs(u, BurgersParams{0.1, 1.0, 1.0}, c);
    for (int r = 0; r < 4; ++r) CHECK(du(0, r) == 0.0);
}

TEST_CASE("full rhs matches brute-force enumeration") {
    for (int m : {1, 2, 3, 4}) {
        const auto c = triple_product_tensor(m);
        auto u = random_real_field(8, m, 100 + m);
        u(-4, 0) = Complex(0.3, 0.1); // the Nyquist row must not leak into the band
        const auto du = full_rhs(u, BurgersParams{0.07, 1.0, 1.0}, c);
        const auto expected = brute_full_rhs(u, 0.07);
        CHECK(max_abs_difference(du, expected) < 1e-13);
    }
}

TEST_CASE("direct and transform products agree") {
    const auto c = triple_product_tensor(5);
    for (int n : {8, 16, 32, 64}) {
        const auto u = random_real_field(n, 5, static_cast<unsigned>(n));
        const BurgersParams params{0.05, 1.0, 1.0};
        const auto a = full_rhs(u, params, c, ConvolutionMethod::direct);
        const auto b = full_rhs(u, params, c, ConvolutionMethod::transform);
        CHECK(max_abs_difference(a, b) < 1e-12 * std::max(1.0, a.max_abs()));
    }
    const auto x = random_real_field(32, 1, 5);
    const auto y = random_real_field(32, 1, 6);
    const auto direct = truncated_convolution(x.order(0), y.order(0));
    PCField out(32, 1);
    add_advection(x, y, {0, 1}, {0, 1}, {0, 1}, triple_product_tensor(1), 1.0, out, ConvolutionMethod::transform);
    for (int k = out.k_min() + 1; k <= out.k_max(); ++k)
        CHECK(std::abs(out(k, 0) - Complex(0.0, -0.5 * k) * direct[static_cast<std::size_t>(k + 16)]) < 1e-13);
}

TEST_CASE("rhs preserves the reality symmetry") {
    const auto c = triple_product_tensor(4);
    for (unsigned seed = 0; seed < 5; ++seed) {
        const auto u = random_real_field(32, 4, seed);
        for (auto method : {ConvolutionMethod::direct, ConvolutionMethod::transform}) {
            const auto du = full_rhs(u, BurgersParams{0.03, 1.0, 1.0}, c, method);
            CHECK(du.reality_defect() < 1e-13);
        }
    }
}

TEST_CASE("inviscid rhs conserves the weighted quadratic form") {
    for (int m : {1, 2, 3, 4}) {
        const auto c = triple_product_tensor(m);
        for (int n : {8, 16, 32}) {
            const auto u = random_real_field(n, m, static_cast<unsigned>(7 * n + m));
            const auto du = full_rhs(u, BurgersParams{0.0, 1.0, 1.0}, c);
            CHECK(std::abs(weighted_inner(du, u)) < 1e-10);
        }
    }
}

TEST_CASE("viscous dissipation identity") {
    const double nu = 0.17;
    for (int m : {2, 4}) {
        const auto c = triple_product_tensor(m);
        const auto u = random_real_field(32, m, 40u + static_cast<unsigned>(m));
        const auto du = full_rhs(u, BurgersParams{nu, 1.0, 1.0}, c);
        CHECK(std::abs(weighted_inner(du, u) + nu * weighted_gradient(u)) < 1e-10);
    }
}

TEST_CASE("single chaos order reduces to the deterministic Galerkin ODE") {
    const int n = 16;
    const auto u = random_real_field(n, 1, 9);
    const double nu = 0.05;
    const auto du = full_rhs(u, BurgersParams{nu, 1.0, 1.0}, triple_product_tensor(1));
    for (int k = u.k_min() + 1; k <= u.k_max(); ++k) {
        Complex nonlinear = 0.0;
        for (int p = u.k_min(); p <= u.k_max(); ++p)
            if (in_band(k - p, n)) nonlinear += u(p, 0) * u(k - p, 0);
        const Complex expected = Complex(0.0, -0.5 * k) * nonlinear - nu * k * k * u(k, 0);
        CHECK(std::abs(du(k, 0) - expected) < 1e-13);
    }
}

TEST_CASE("deterministic initial data keeps the higher orders at rest") {
    const auto c = triple_product_tensor(4);
    const auto u = build_initial_field(16, 4, 1.0, 0.0);
    const auto du = full_rhs(u, BurgersParams{0.03, 1.0, 0.0}, c);
    const auto scalar = full_rhs(sine_field(16), BurgersParams{0.03, 1.0, 0.0}, triple_product_tensor(1));
    for (int k = u.k_min(); k <= u.k_max(); ++k) {
        CHECK(du(k, 0) == scalar(k, 0));
        for (int r = 1; r < 4; ++r) CHECK(du(k, r) == 0.0);
    }
}

} // TEST_SUITE
