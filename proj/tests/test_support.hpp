#pragma once

// Shared helpers for the unit tests: random fields and slow reference
// implementations written without any of the library's shortcuts.

#include "mzuq/chaos_basis.hpp"
#include "mzuq/pc_field.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace mzuq::testing {

inline constexpr double kPi = 3.14159265358979323846;

// Reality-symmetric field (u_{-k} = conj u_k, u_0 real, Nyquist row zero).
inline PCField random_real_field(int n_modes, int n_orders, unsigned seed, double amplitude = 1.0) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> dist(-amplitude, amplitude);
    PCField u(n_modes, n_orders);
    for (int r = 0; r < n_orders; ++r) {
        u(0, r) = Complex(dist(gen), 0.0);
        for (int k = 1; k <= u.k_max(); ++k) {
            const Complex v(dist(gen), dist(gen));
            u(k, r) = v;
            u(-k, r) = std::conj(v);
        }
    }
    return u;
}

// Monomial coefficients of L_n from the explicit sum
// L_n(x) = 2^-n sum_j (-1)^j C(n,j) C(2n-2j,n) x^(n-2j).
inline std::vector<double> legendre_monomials(int n) {
    auto binom = [](int a, int b) {
        double v = 1.0;
        for (int i = 1; i <= b; ++i) v = v * (a - b + i) / i;
        return v;
    };
    std::vector<double> coeffs(static_cast<std::size_t>(n) + 1, 0.0);
    for (int j = 0; 2 * j <= n; ++j)
        coeffs[static_cast<std::size_t>(n - 2 * j)] =
            (j % 2 == 0 ? 1.0 : -1.0) * binom(n, j) * binom(2 * n - 2 * j, n) / std::pow(2.0, n);
    return coeffs;
}

inline std::vector<double> poly_multiply(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

// E[p(xi)] for xi ~ U[-1, 1], exactly from the monomial moments.
inline double uniform_expectation(const std::vector<double>& p) {
    double sum = 0.0;
    for (std::size_t k = 0; k < p.size(); k += 2) sum += p[k] / static_cast<double>(k + 1);
    return sum;
}

inline double exact_triple(int l, int m, int r) {
    const auto lr = legendre_monomials(r);
    return uniform_expectation(poly_multiply(poly_multiply(legendre_monomials(l), legendre_monomials(m)), lr)) /
           uniform_expectation(poly_multiply(lr, lr));
}

inline double exact_quad(int a, int b, int c, int d) {
    return uniform_expectation(poly_multiply(poly_multiply(legendre_monomials(a), legendre_monomials(b)),
                                             poly_multiply(legendre_monomials(c), legendre_monomials(d))));
}

inline bool in_band(int k, int n_modes) { return k >= -n_modes / 2 && k <= n_modes / 2 - 1; }

// -(ik/2) sum_{l in [l0,l1), m in [m0,m1)} sum_{p+q=k} a_{pl} b_{qm} c_{lmr}, every (k, r),
// by plain enumeration of all index tuples.
inline PCField brute_advection(const PCField& a, const PCField& b, int l0, int l1, int m0, int m1,
                               int n_orders_out) {
    const int n = a.n_modes();
    PCField out(n, n_orders_out);
    for (int k = a.k_min(); k <= a.k_max(); ++k) {
        for (int r = 0; r < n_orders_out; ++r) {
            Complex sum = 0.0;
            for (int l = l0; l < l1; ++l)
                for (int m = m0; m < m1; ++m) {
                    const double c = exact_triple(l, m, r);
                    if (c == 0.0) continue;
                    for (int p = a.k_min(); p <= a.k_max(); ++p) {
                        const int q = k - p;
                        if (!in_band(q, n)) continue;
                        sum += a(p, l) * b(q, m) * c;
                    }
                }
            out(k, r) = Complex(0.0, -0.5 * k) * sum;
        }
    }
    for (int r = 0; r < n_orders_out; ++r) out(out.k_min(), r) = 0.0;
    return out;
}

inline PCField brute_full_rhs(const PCField& u, double nu) {
    const int m = u.n_orders();
    PCField out = brute_advection(u, u, 0, m, 0, m, m);
    for (int r = 0; r < m; ++r)
        for (int k = u.k_min() + 1; k <= u.k_max(); ++k) out(k, r) -= nu * k * k * u(k, r);
    return out;
}

} // namespace mzuq::testing
