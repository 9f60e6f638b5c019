#include "mzuq/chaos_basis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace mzuq {

namespace {

// Recurrence without the public order cap; rule construction needs high orders.
LegendreValue legendre_recurrence(int order, double xi) {
    if (order == 0) return {1.0, 0.0};
    double prev = 1.0;
    double curr = xi;
    for (int n = 2; n <= order; ++n) {
        const double next = ((2.0 * n - 1.0) * xi * curr - (n - 1.0) * prev) / n;
        prev = curr;
        curr = next;
    }
    // L'_n = n (xi L_n - L_{n-1}) / (xi^2 - 1); at the endpoints use n(n+1)/2 * (+-1)^{n+1}.
    double derivative;
    const double denom = xi * xi - 1.0;
    if (std::abs(denom) < 1e-300) {
        const double sign = (xi > 0.0 || order % 2 == 1) ? 1.0 : -1.0;
        derivative = sign * 0.5 * order * (order + 1.0);
    } else {
        derivative = order * (xi * curr - prev) / denom;
    }
    return {curr, derivative};
}

constexpr double kNewtonTolerance = 1e-14;
constexpr int kNewtonMaxIterations = 100;

int node_count_for_degree(int degree) { return std::max(16, (degree + 2) / 2); }

} // namespace

double legendre_eval(int order, double xi) {
    if (order < 0 || order > kMaxLegendreOrder)
        throw std::out_of_range("legendre order " + std::to_string(order) + " outside [0, " +
                                std::to_string(kMaxLegendreOrder) + "]");
    return legendre_recurrence(order, xi).value;
}

LegendreValue legendre_eval_with_derivative(int order, double xi) {
    if (order < 0 || order > kMaxLegendreOrder)
        throw std::out_of_range("legendre order " + std::to_string(order) + " outside [0, " +
                                std::to_string(kMaxLegendreOrder) + "]");
    return legendre_recurrence(order, xi);
}

QuadratureRule gauss_legendre_rule(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre_rule: need at least one node");

    QuadratureRule rule;
    rule.nodes.assign(static_cast<std::size_t>(n), 0.0);
    rule.weights.assign(static_cast<std::size_t>(n), 0.0);

    // Roots come in +- pairs; solve for the positive half and mirror.
    const int half = n / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < kNewtonMaxIterations; ++it) {
            const auto lv = legendre_recurrence(n, x);
            const double dx = lv.value / lv.derivative;
            x -= dx;
            if (std::abs(dx) < kNewtonTolerance) break;
        }
        const double dp = legendre_recurrence(n, x).derivative;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        const auto lo = static_cast<std::size_t>(i);
        rule.nodes[hi] = x;
        rule.nodes[lo] = -x;
        rule.weights[hi] = w;
        rule.weights[lo] = w;
    }
    if (n % 2 == 1) {
        const double dp = legendre_recurrence(n, 0.0).derivative;
        rule.nodes[static_cast<std::size_t>(half)] = 0.0;
        rule.weights[static_cast<std::size_t>(half)] = 2.0 / (dp * dp);
    }
    return rule;
}

bool TripleTensor::structurally_nonzero(int l, int m, int r) {
    if ((l + m + r) % 2 != 0) return false;
    return l + m >= r && l + r >= m && m + r >= l;
}

TripleTensor::TripleTensor(int order_count) : order_count_(order_count) {
    if (order_count < 1) throw std::invalid_argument("triple_product_tensor: need M >= 1");
    const auto n = static_cast<std::size_t>(order_count);
    dense_.assign(n * n * n, 0.0);

    const auto rule = gauss_legendre_rule(node_count_for_degree(3 * (order_count - 1)));
    // Tabulate L_i at the nodes once.
    std::vector<std::vector<double>> table(n, std::vector<double>(rule.size()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q = 0; q < rule.size(); ++q)
            table[i][q] = legendre_recurrence(static_cast<int>(i), rule.nodes[q]).value;

    for (int l = 0; l < order_count; ++l) {
        for (int m = 0; m < order_count; ++m) {
            for (int r = 0; r < order_count; ++r) {
                if (!structurally_nonzero(l, m, r)) continue;
                double expectation = 0.0;
                for (std::size_t q = 0; q < rule.size(); ++q)
                    expectation += 0.5 * rule.weights[q] * table[l][q] * table[m][q] * table[r][q];
                const double value = expectation * (2.0 * r + 1.0);
                dense_[index(l, m, r)] = value;
                entries_.push_back({l, m, r, value});
            }
        }
    }
}

TripleTensor triple_product_tensor(int order_count) { return TripleTensor(order_count); }

QuadTensor::QuadTensor(int order_count) : order_count_(order_count) {
    if (order_count < 1) throw std::invalid_argument("quad_product_tensor: need order count >= 1");
    const auto n = static_cast<std::size_t>(order_count);
    values_.assign(n * n * n * n, 0.0);

    const auto rule = gauss_legendre_rule(node_count_for_degree(4 * (order_count - 1)));
    std::vector<std::vector<double>> table(n, std::vector<double>(rule.size()));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t q = 0; q < rule.size(); ++q)
            table[i][q] = legendre_recurrence(static_cast<int>(i), rule.nodes[q]).value;

    // Fill r1<=r2<=r3<=r4 and scatter to all permutations so symmetry is exact.
    auto at = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) -> double& {
        return values_[((a * n + b) * n + c) * n + d];
    };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b)
            for (std::size_t c = b; c < n; ++c)
                for (std::size_t d = c; d < n; ++d) {
                    double value = 0.0;
                    if ((a + b + c + d) % 2 == 0) {
                        for (std::size_t q = 0; q < rule.size(); ++q)
                            value += 0.5 * rule.weights[q] * table[a][q] * table[b][q] *
                                     table[c][q] * table[d][q];
                    }
                    std::size_t idx[4] = {a, b, c, d};
                    std::sort(idx, idx + 4);
                    do {
                        at(idx[0], idx[1], idx[2], idx[3]) = value;
                    } while (std::next_permutation(idx, idx + 4));
                }
}

QuadTensor quad_product_tensor(int order_count) { return QuadTensor(order_count); }

} // namespace mzuq
