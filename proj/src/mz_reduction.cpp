#include "mzuq/mz_reduction.hpp"

#include <algorithm>
#include <stdexcept>

namespace mzuq {

void ReductionSpec::validate() const {
    if (resolved < 1 || resolved > n_orders)
        throw std::invalid_argument("reduction: resolved order count must satisfy 1 <= lambda <= M");
    if (!memory_enabled) return;
    if (resolved >= n_orders)
        throw std::invalid_argument("reduction: memory needs unresolved orders (lambda < M)");
    if (!(t0 > 0.0)) throw std::invalid_argument("reduction: memory length t0 must be positive");
    if (n0 < 1) throw std::invalid_argument("reduction: subinterval count n0 must be >= 1");
}

MemoryState::MemoryState(int n_modes, int resolved, int n0)
    : sub(static_cast<std::size_t>(n0), PCField(n_modes, resolved)) {}

PCField MemoryState::total() const {
    if (sub.empty()) throw std::logic_error("MemoryState::total on empty state");
    PCField out(sub.front().n_modes(), sub.front().n_orders());
    for (const auto& w : sub) {
        auto dst = out.data();
        auto src = w.data();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += src[i];
    }
    return out;
}

PCField project(const PCField& u, int resolved) {
    PCField out = u;
    for (int r = std::max(resolved, 0); r < u.n_orders(); ++r) {
        auto row = out.order(r);
        std::fill(row.begin(), row.end(), Complex{});
    }
    return out;
}

PCField markovian_rhs(const PCField& u_hat, const BurgersParams& params, const TripleTensor& c,
                      int resolved, ConvolutionMethod method) {
    if (resolved < 1 || resolved > u_hat.n_orders())
        throw std::invalid_argument("markovian_rhs: resolved count outside field");
    const OrderRange res{0, resolved};
    PCField du(u_hat.n_modes(), resolved);
    add_advection(u_hat, u_hat, res, res, res, c, 1.0, du, method);
    add_viscous(u_hat, params.nu, res, du);
    du.zero_nyquist();
    return du;
}

PCField plql_kernel(const PCField& u_hat, const TripleTensor& c, int resolved, int n_orders,
                    ConvolutionMethod method) {
    if (resolved < 1 || resolved > u_hat.n_orders() || n_orders < resolved)
        throw std::invalid_argument("plql_kernel: inconsistent order counts");
    PCField out(u_hat.n_modes(), resolved);
    if (resolved == n_orders) return out;

    const OrderRange res{0, resolved};
    const OrderRange unres{resolved, n_orders};

    // (PLu)_{pl} for unresolved l; the viscous part vanishes because P zeroes u_{pl}.
    PCField pl_unresolved(u_hat.n_modes(), n_orders);
    add_advection(u_hat, u_hat, res, res, unres, c, 1.0, pl_unresolved, method);
    pl_unresolved.zero_nyquist();

    add_advection(pl_unresolved, u_hat, unres, res, res, c, 2.0, out, method);
    out.zero_nyquist();
    return out;
}

PCField petql_term(const PCField& u, const TripleTensor& c, int resolved,
                   ConvolutionMethod method) {
    const int n_orders = u.n_orders();
    if (resolved < 1 || resolved > n_orders)
        throw std::invalid_argument("petql_term: resolved count outside field");
    PCField out(u.n_modes(), resolved);
    if (resolved == n_orders) return out;

    const OrderRange res{0, resolved};
    const OrderRange unres{resolved, n_orders};
    add_advection(u, u, unres, res, res, c, 2.0, out, method);
    add_advection(u, u, unres, unres, res, c, 1.0, out, method);
    out.zero_nyquist();
    return out;
}

MemoryState memory_rhs(const MemoryState& w, const PCField& kernel, double subinterval) {
    if (!(subinterval > 0.0)) throw std::invalid_argument("memory_rhs: subinterval must be positive");
    const double decay = 2.0 / subinterval;
    const double coupling = 4.0 / subinterval;

    MemoryState dw;
    dw.sub.assign(w.sub.size(), PCField(kernel.n_modes(), kernel.n_orders()));
    const auto g = kernel.data();
    for (std::size_t i = 0; i < w.sub.size(); ++i) {
        // 1-based index ii = i + 1: sign (-1)^{ii+1} is + for even i.
        const double forcing_sign = (i % 2 == 0) ? 2.0 : -2.0;
        auto dst = dw.sub[i].data();
        const auto wi = w.sub[i].data();
        for (std::size_t e = 0; e < dst.size(); ++e) dst[e] = -decay * wi[e] + forcing_sign * g[e];
        for (std::size_t j = 0; j < i; ++j) {
            // (-1)^{ii + jj + 1} with ii = i+1, jj = j+1
            const double sign = ((i + j + 3) % 2 == 0) ? 1.0 : -1.0;
            const auto wj = w.sub[j].data();
            for (std::size_t e = 0; e < dst.size(); ++e) dst[e] += sign * coupling * wj[e];
        }
    }
    return dw;
}

ReducedModel::ReducedModel(ReductionSpec spec, BurgersParams params, const TripleTensor& c,
                           int n_modes, ConvolutionMethod method)
    : spec_(spec), params_(params), c_(&c), n_modes_(n_modes), method_(method) {
    spec_.validate();
    if (c.order_count() < spec_.n_orders)
        throw std::invalid_argument("ReducedModel: triple tensor smaller than M");
}

std::size_t ReducedModel::state_size() const {
    const auto block = static_cast<std::size_t>(n_modes_) * static_cast<std::size_t>(spec_.resolved);
    const auto slots = spec_.memory_enabled ? static_cast<std::size_t>(spec_.n0) : 0u;
    return block * (1 + slots);
}

StateVector ReducedModel::pack(const PCField& u_hat, const MemoryState& w) const {
    StateVector state;
    state.reserve(state_size());
    const auto resolved = project(u_hat, spec_.resolved);
    for (int r = 0; r < spec_.resolved; ++r) {
        const auto row = resolved.order(r);
        state.insert(state.end(), row.begin(), row.end());
    }
    if (spec_.memory_enabled) {
        if (w.sub.size() != static_cast<std::size_t>(spec_.n0))
            throw std::invalid_argument("ReducedModel::pack: memory state has wrong subinterval count");
        for (const auto& wi : w.sub) state.insert(state.end(), wi.data().begin(), wi.data().end());
    }
    return state;
}

PCField ReducedModel::unpack_resolved(std::span<const Complex> state) const {
    PCField u(n_modes_, spec_.resolved);
    std::copy_n(state.begin(), u.size(), u.data().begin());
    return u;
}

MemoryState ReducedModel::unpack_memory(std::span<const Complex> state) const {
    if (!spec_.memory_enabled) return {};
    MemoryState w(n_modes_, spec_.resolved, spec_.n0);
    std::size_t offset = static_cast<std::size_t>(n_modes_) * static_cast<std::size_t>(spec_.resolved);
    for (auto& wi : w.sub) {
        std::copy_n(state.begin() + static_cast<std::ptrdiff_t>(offset), wi.size(), wi.data().begin());
        offset += wi.size();
    }
    return w;
}

void ReducedModel::rhs(double /*t*/, std::span<const Complex> state,
                       std::span<Complex> derivative) const {
    const PCField u_hat = unpack_resolved(state);
    PCField du = markovian_rhs(u_hat, params_, *c_, spec_.resolved, method_);

    if (!spec_.memory_enabled) {
        std::copy(du.data().begin(), du.data().end(), derivative.begin());
        return;
    }

    const MemoryState w = unpack_memory(state);
    const PCField w_total = w.total();
    {
        auto d = du.data();
        const auto s = w_total.data();
        for (std::size_t i = 0; i < d.size(); ++i) d[i] += s[i];
    }
    du.zero_nyquist();

    const PCField kernel = plql_kernel(u_hat, *c_, spec_.resolved, spec_.n_orders, method_);
    const MemoryState dw = memory_rhs(w, kernel, spec_.subinterval());

    auto out = derivative.begin();
    out = std::copy(du.data().begin(), du.data().end(), out);
    for (const auto& dwi : dw.sub) out = std::copy(dwi.data().begin(), dwi.data().end(), out);
}

RhsFunction ReducedModel::as_rhs() const {
    return [this](double t, std::span<const Complex> s, std::span<Complex> d) { rhs(t, s, d); };
}

} // namespace mzuq
