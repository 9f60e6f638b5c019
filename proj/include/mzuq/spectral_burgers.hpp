#pragma once

#include "mzuq/chaos_basis.hpp"
#include "mzuq/pc_field.hpp"
#include "mzuq/time_integration.hpp"

#include <span>
#include <vector>

namespace mzuq {

struct BurgersParams {
    double nu = 0.03;
    double alpha0 = 1.0;
    double alpha1 = 1.0;
};

/// How the Galerkin-truncated products are evaluated. Both paths agree to
/// roundoff; `transform` zero-pads to 2N points so no aliasing reaches the band.
enum class ConvolutionMethod { direct, transform };

/// Half-open range of chaos orders [begin, end).
struct OrderRange {
    int begin = 0;
    int end = 0;

    bool empty() const { return end <= begin; }
    bool contains(int r) const { return r >= begin && r < end; }
    friend bool operator==(const OrderRange&, const OrderRange&) = default;
};

/// Coefficients of u0(x, xi) = (alpha0 + alpha1 xi) sin x. Requires N >= 4, M >= 2.
PCField build_initial_field(int n_modes, int n_orders, double alpha0, double alpha1);

/// conv_k = sum over p + q = k with p, q and k all in the band [-N/2, N/2-1].
void truncated_convolution(std::span<const Complex> a, std::span<const Complex> b,
                           std::span<Complex> out);
std::vector<Complex> truncated_convolution(std::span<const Complex> a,
                                           std::span<const Complex> b);

/// Accumulates the advective Galerkin product
///
///   out_{kr} += scale * (-ik/2) * sum_{l in lr, m in mr} sum_{p+q=k} a_{pl} b_{qm} c_{lmr}
///
/// for r in rr. Only (l, m) pairs with a structurally nonzero c_{lmr} for
/// some r in rr are convolved. When `a` and `b` are the same field over the
/// same order range, each unordered pair is convolved once.
void add_advection(const PCField& a, const PCField& b, OrderRange lr, OrderRange mr,
                   OrderRange rr, const TripleTensor& c, double scale, PCField& out,
                   ConvolutionMethod method = ConvolutionMethod::direct);

/// Adds -nu k^2 u_{kr} for r in rr.
void add_viscous(const PCField& u, double nu, OrderRange rr, PCField& out);

/// Right-hand side of the stochastic Galerkin Burgers system:
///
///   du_{kr}/dt = -(ik/2) sum_{l,m} sum_{p+q=k} u_{pl} u_{qm} c_{lmr} - nu k^2 u_{kr}
///
/// The row k = -N/2 of the result is zero.
PCField full_rhs(const PCField& u, const BurgersParams& params, const TripleTensor& c,
                 ConvolutionMethod method = ConvolutionMethod::direct);

/// full_rhs over flat (N, M) states, for the stepper. Keeps a reference to `c`.
RhsFunction full_system_rhs(int n_modes, int n_orders, BurgersParams params, const TripleTensor& c,
                            ConvolutionMethod method = ConvolutionMethod::direct);

} // namespace mzuq
