#pragma once

#include <cstddef>
#include <vector>

namespace mzuq {

/// Highest Legendre order the library evaluates.
inline constexpr int kMaxLegendreOrder = 32;

/// Legendre polynomial L_order(xi) by the three-term recurrence.
double legendre_eval(int order, double xi);

/// L_order(xi) and its derivative, evaluated together.
struct LegendreValue {
    double value;
    double derivative;
};
LegendreValue legendre_eval_with_derivative(int order, double xi);

/// Gauss-Legendre rule for the unweighted integral over [-1, 1].
struct QuadratureRule {
    std::vector<double> nodes;   // strictly increasing
    std::vector<double> weights; // sum to 2

    std::size_t size() const { return nodes.size(); }

    template <class F>
    double integrate(F&& f) const {
        double sum = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
        return sum;
    }
};

/// n-point rule, exact for polynomials of degree <= 2n-1. Throws for n < 1.
QuadratureRule gauss_legendre_rule(int n);

/// Normalized triple products c_{lmr} = E[L_l L_m L_r] / E[L_r^2] under the
/// uniform density 1/2 on [-1, 1].
///
/// Only structurally nonzero entries are stored. Entries violating the
/// triangle/parity selection rule are exact zeros.
class TripleTensor {
public:
    struct Entry {
        int l, m, r;
        double value;
    };

    TripleTensor() = default;
    explicit TripleTensor(int order_count);

    int order_count() const { return order_count_; }
    double operator()(int l, int m, int r) const { return dense_[index(l, m, r)]; }
    const std::vector<Entry>& nonzeros() const { return entries_; }

    /// Triangle and parity selection rule for Legendre triple products.
    static bool structurally_nonzero(int l, int m, int r);

private:
    std::size_t index(int l, int m, int r) const {
        const auto n = static_cast<std::size_t>(order_count_);
        return (static_cast<std::size_t>(l) * n + static_cast<std::size_t>(m)) * n +
               static_cast<std::size_t>(r);
    }

    int order_count_ = 0;
    std::vector<double> dense_;
    std::vector<Entry> entries_;
};

TripleTensor triple_product_tensor(int order_count);

/// Fully symmetric quadruple products d_{r1r2r3r4} = E[L_r1 L_r2 L_r3 L_r4].
class QuadTensor {
public:
    QuadTensor() = default;
    explicit QuadTensor(int order_count);

    int order_count() const { return order_count_; }
    double operator()(int r1, int r2, int r3, int r4) const {
        const auto n = static_cast<std::size_t>(order_count_);
        return values_[((static_cast<std::size_t>(r1) * n + static_cast<std::size_t>(r2)) * n +
                        static_cast<std::size_t>(r3)) * n + static_cast<std::size_t>(r4)];
    }

private:
    int order_count_ = 0;
    std::vector<double> values_;
};

QuadTensor quad_product_tensor(int order_count);

} // namespace mzuq
