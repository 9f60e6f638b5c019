#pragma once

#include "mzuq/chaos_basis.hpp"
#include "mzuq/pc_field.hpp"
#include "mzuq/spectral_burgers.hpp"
#include "mzuq/time_integration.hpp"

#include <span>
#include <vector>

namespace mzuq {

/// Split of the chaos orders into resolved [0, resolved) and unresolved
/// [resolved, n_orders), plus the finite-memory closure parameters.
struct ReductionSpec {
    int resolved = 2;       // Lambda
    int n_orders = 7;       // M of the full system
    double t0 = 0.0;        // memory length
    int n0 = 1;             // subintervals of [t - t0, t]
    bool memory_enabled = true;

    double subinterval() const { return t0 / n0; }
    void validate() const;
};

/// Auxiliary memory variables w0^{(i)}, i = 1..n0, each over (k, r < Lambda).
struct MemoryState {
    std::vector<PCField> sub;

    MemoryState() = default;
    MemoryState(int n_modes, int resolved, int n0);

    /// w0 = sum_i w0^{(i)}
    PCField total() const;
};

/// Zeroes every order r >= resolved.
PCField project(const PCField& u, int resolved);

/// Projected full right-hand side PLu on the resolved orders (viscous term
/// included). Reads only orders r < resolved of `u_hat`; returns an
/// (N, resolved) field.
PCField markovian_rhs(const PCField& u_hat, const BurgersParams& params, const TripleTensor& c,
                      int resolved, ConvolutionMethod method = ConvolutionMethod::direct);

/// Leading memory integrand PLQLu_{kr} for r < resolved:
///
///   2 (-ik/2) sum_{l >= resolved} sum_{m < resolved} sum_{p+q=k} (PLu)_{pl} u_{qm} c_{lmr}
///
/// where (PLu)_{pl} is the advective part of the full right-hand side at
/// unresolved order l, built from resolved orders only. Zero when
/// resolved == n_orders.
PCField plql_kernel(const PCField& u_hat, const TripleTensor& c, int resolved, int n_orders,
                    ConvolutionMethod method = ConvolutionMethod::direct);

/// Unresolved forcing of the resolved orders along a full trajectory:
///
///   2 (-ik/2) sum_{l >= L, m < L} conv c + (-ik/2) sum_{l, m >= L} conv c
///
/// Equals full_rhs(u) - markovian_rhs(u) on r < resolved.
PCField petql_term(const PCField& u, const TripleTensor& c, int resolved,
                   ConvolutionMethod method = ConvolutionMethod::direct);

/// Right-hand side of the trapezoidal memory ODEs for a given kernel value:
///
///   dw^{(i)}/dt = -(2/dt0) w^{(i)} + (-1)^{i+1} 2 kernel + sum_{j<i} (4/dt0) (-1)^{i+j+1} w^{(j)}
MemoryState memory_rhs(const MemoryState& w, const PCField& kernel, double subinterval);

/// The reduced model over a flat state [u_hat | w^{(1)} | ... | w^{(n0)}].
class ReducedModel {
public:
    ReducedModel(ReductionSpec spec, BurgersParams params, const TripleTensor& c, int n_modes,
                 ConvolutionMethod method = ConvolutionMethod::direct);

    const ReductionSpec& spec() const { return spec_; }
    int n_modes() const { return n_modes_; }
    std::size_t state_size() const;

    StateVector pack(const PCField& u_hat, const MemoryState& w) const;
    PCField unpack_resolved(std::span<const Complex> state) const;
    MemoryState unpack_memory(std::span<const Complex> state) const;

    /// (du_hat, dw): du_hat = PLu + sum_i w^{(i)}; dw from memory_rhs with the
    /// PLQL kernel. With memory disabled du_hat = PLu and dw = 0.
    void rhs(double t, std::span<const Complex> state, std::span<Complex> derivative) const;
    RhsFunction as_rhs() const;

private:
    ReductionSpec spec_;
    BurgersParams params_;
    const TripleTensor* c_;
    int n_modes_;
    ConvolutionMethod method_;
};

} // namespace mzuq
