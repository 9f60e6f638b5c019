#include "mzuq/uq_stats.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace mzuq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kVarianceFloor = -1e-10;

void check_orders(const PCField& u, int stat_orders) {
    if (stat_orders < 1 || stat_orders > u.n_orders())
        throw std::invalid_argument("statistics: stat order count outside field");
}

double weighted_norm(const PCField& u, int stat_orders, bool gradient) {
    check_orders(u, stat_orders);
    double sum = 0.0;
    for (int r = 0; r < stat_orders; ++r) {
        double row = 0.0;
        for (int k = u.k_min(); k <= u.k_max(); ++k) {
            const double w = gradient ? static_cast<double>(k) * k : 1.0;
            row += w * std::norm(u(k, r));
        }
        sum += row / (2.0 * r + 1.0);
    }
    return kTwoPi * sum;
}

// sum_{r1..r4} A_{r1r2} A_{r3r4} d_{r1r2r3r4} with A_{ab} = sum_k w_k u_{ka} conj(u_{kb}).
double quartic_moment(const PCField& u, const QuadTensor& d, int stat_orders, bool gradient) {
    check_orders(u, stat_orders);
    if (d.order_count() < stat_orders)
        throw std::invalid_argument("statistics: quadruple tensor smaller than stat order count");
    const auto n = static_cast<std::size_t>(stat_orders);
    std::vector<Complex> a(n * n);
    for (int r1 = 0; r1 < stat_orders; ++r1)
        for (int r2 = 0; r2 < stat_orders; ++r2) {
            Complex s{};
            for (int k = u.k_min(); k <= u.k_max(); ++k) {
                const double w = gradient ? static_cast<double>(k) * k : 1.0;
                s += w * u(k, r1) * std::conj(u(k, r2));
            }
            a[static_cast<std::size_t>(r1) * n + static_cast<std::size_t>(r2)] = s;
        }

    Complex total{};
    double scale = 0.0;
    for (int r1 = 0; r1 < stat_orders; ++r1)
        for (int r2 = 0; r2 < stat_orders; ++r2)
            for (int r3 = 0; r3 < stat_orders; ++r3)
                for (int r4 = 0; r4 < stat_orders; ++r4) {
                    const double dv = d(r1, r2, r3, r4);
                    if (dv == 0.0) continue;
                    const Complex term = a[static_cast<std::size_t>(r1) * n + static_cast<std::size_t>(r2)] *
                                         a[static_cast<std::size_t>(r3) * n + static_cast<std::size_t>(r4)] * dv;
                    total += term;
                    scale += std::abs(term);
                }
    if (std::abs(total.imag()) > 1e-10 * std::max(1.0, scale))
        throw std::runtime_error("statistics: quartic moment has a non-negligible imaginary part");
    return total.real();
}

} // namespace

double mean_energy(const PCField& u, int stat_orders) {
    return 0.5 * weighted_norm(u, stat_orders, false);
}

double var_energy(const PCField& u, const QuadTensor& d, int stat_orders) {
    const double mean = mean_energy(u, stat_orders);
    return 0.25 * kTwoPi * kTwoPi * quartic_moment(u, d, stat_orders, false) - mean * mean;
}

double mean_gradient(const PCField& u, int stat_orders) {
    return weighted_norm(u, stat_orders, true);
}

double var_gradient(const PCField& u, const QuadTensor& d, int stat_orders) {
    const double mean = mean_gradient(u, stat_orders);
    return kTwoPi * kTwoPi * quartic_moment(u, d, stat_orders, true) - mean * mean;
}

double StatSample::std_energy() const { return std::sqrt(std::max(var_energy, 0.0)); }
double StatSample::std_gradient() const { return std::sqrt(std::max(var_gradient, 0.0)); }

StatSample compute_stats(double t, const PCField& u, const QuadTensor& d, int stat_orders) {
    auto clamp = [](double v) { return (v < 0.0 && v >= kVarianceFloor) ? 0.0 : v; };
    StatSample s;
    s.t = t;
    s.mean_energy = mean_energy(u, stat_orders);
    s.var_energy = clamp(var_energy(u, d, stat_orders));
    s.mean_gradient = mean_gradient(u, stat_orders);
    s.var_gradient = clamp(var_gradient(u, d, stat_orders));
    return s;
}

} // namespace mzuq
