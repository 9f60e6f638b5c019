#include "mzuq/spectral_burgers.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace mzuq {

namespace {

struct PairTerm {
    int l;
    int m;
    double weight; // 2 for an off-diagonal pair folded by symmetry
};

std::vector<PairTerm> active_pairs(bool symmetric, OrderRange lr, OrderRange mr, OrderRange rr) {
    std::vector<PairTerm> pairs;
    for (int l = lr.begin; l < lr.end; ++l) {
        for (int m = mr.begin; m < mr.end; ++m) {
            if (symmetric && m < l) continue;
            bool any = false;
            for (int r = rr.begin; r < rr.end && !any; ++r)
                any = TripleTensor::structurally_nonzero(l, m, r);
            if (!any) continue;
            pairs.push_back({l, m, (symmetric && m != l) ? 2.0 : 1.0});
        }
    }
    return pairs;
}

void check_ranges(const PCField& a, const PCField& b, OrderRange lr, OrderRange mr,
                  OrderRange rr, const TripleTensor& c, const PCField& out) {
    if (a.n_modes() != b.n_modes() || a.n_modes() != out.n_modes())
        throw std::invalid_argument("add_advection: Fourier bands differ");
    if (lr.begin < 0 || mr.begin < 0 || rr.begin < 0 || lr.end > a.n_orders() ||
        mr.end > b.n_orders() || rr.end > out.n_orders())
        throw std::invalid_argument("add_advection: order range outside field");
    const int top = std::max({lr.end, mr.end, rr.end});
    if (top > c.order_count())
        throw std::invalid_argument("add_advection: triple tensor too small for order range");
}

// Applies out_{kr} += scale * (-ik/2) * acc_r[k].
void apply_wavenumber_factor(const std::vector<std::vector<Complex>>& acc, OrderRange rr,
                             double scale, PCField& out) {
    const int kmin = out.k_min();
    for (int r = rr.begin; r < rr.end; ++r) {
        const auto& row = acc[static_cast<std::size_t>(r - rr.begin)];
        auto dst = out.order(r);
        for (std::size_t i = 0; i < dst.size(); ++i) {
            const double k = static_cast<double>(kmin + static_cast<int>(i));
            const double f = -0.5 * k * scale;
            dst[i] += Complex(-f * row[i].imag(), f * row[i].real());
        }
    }
}

void advection_direct(const PCField& a, const PCField& b, const std::vector<PairTerm>& pairs,
                      OrderRange rr, const TripleTensor& c,
                      std::vector<std::vector<Complex>>& acc) {
    std::vector<Complex> conv(static_cast<std::size_t>(a.n_modes()));
    for (const auto& pair : pairs) {
        truncated_convolution(a.order(pair.l), b.order(pair.m), conv);
        for (int r = rr.begin; r < rr.end; ++r) {
            const double coeff = c(pair.l, pair.m, r);
            if (coeff == 0.0) continue;
            auto& row = acc[static_cast<std::size_t>(r - rr.begin)];
            const double w = pair.weight * coeff;
            for (std::size_t i = 0; i < row.size(); ++i) row[i] += w * conv[i];
        }
    }
}

// FFTW plans are created under a global lock; execution uses per-thread buffers.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

class TransformWorkspace {
public:
    explicit TransformWorkspace(int n_modes) : n_modes_(n_modes), padded_(2 * n_modes) {
        const auto p = static_cast<std::size_t>(padded_);
        buffer_ = static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * p));
        std::lock_guard lock(fftw_planner_mutex());
        to_physical_ = fftw_plan_dft_1d(padded_, buffer_, buffer_, FFTW_BACKWARD, FFTW_ESTIMATE);
        to_spectral_ = fftw_plan_dft_1d(padded_, buffer_, buffer_, FFTW_FORWARD, FFTW_ESTIMATE);
    }
    ~TransformWorkspace() {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(to_physical_);
        fftw_destroy_plan(to_spectral_);
        fftw_free(buffer_);
    }
    TransformWorkspace(const TransformWorkspace&) = delete;
    TransformWorkspace& operator=(const TransformWorkspace&) = delete;

    int n_modes() const { return n_modes_; }
    int padded() const { return padded_; }

    void to_physical(std::span<const Complex> coeffs, std::vector<Complex>& values) {
        auto* buf = reinterpret_cast<Complex*>(buffer_);
        std::fill(buf, buf + padded_, Complex{});
        for (int i = 0; i < n_modes_; ++i) {
            const int k = i - n_modes_ / 2;
            buf[(k + padded_) % padded_] = coeffs[static_cast<std::size_t>(i)];
        }
        fftw_execute(to_physical_);
        values.assign(buf, buf + padded_);
    }

    void to_spectral(const std::vector<Complex>& values, std::vector<Complex>& coeffs) {
        auto* buf = reinterpret_cast<Complex*>(buffer_);
        std::copy(values.begin(), values.end(), buf);
        fftw_execute(to_spectral_);
        coeffs.resize(static_cast<std::size_t>(n_modes_));
        const double inv = 1.0 / padded_;
        for (int i = 0; i < n_modes_; ++i) {
            const int k = i - n_modes_ / 2;
            coeffs[static_cast<std::size_t>(i)] = buf[(k + padded_) % padded_] * inv;
        }
    }

private:
    int n_modes_;
    int padded_;
    fftw_complex* buffer_ = nullptr;
    fftw_plan to_physical_ = nullptr;
    fftw_plan to_spectral_ = nullptr;
};

TransformWorkspace& transform_workspace(int n_modes) {
    thread_local std::unique_ptr<TransformWorkspace> ws;
    if (!ws || ws->n_modes() != n_modes) ws = std::make_unique<TransformWorkspace>(n_modes);
    return *ws;
}

void advection_transform(const PCField& a, const PCField& b, bool symmetric,
                         const std::vector<PairTerm>& pairs, OrderRange lr, OrderRange mr,
                         OrderRange rr, const TripleTensor& c,
                         std::vector<std::vector<Complex>>& acc) {
    auto& ws = transform_workspace(a.n_modes());
    const auto p = static_cast<std::size_t>(ws.padded());

    std::vector<std::vector<Complex>> a_phys(static_cast<std::size_t>(lr.end - lr.begin));
    for (int l = lr.begin; l < lr.end; ++l)
        ws.to_physical(a.order(l), a_phys[static_cast<std::size_t>(l - lr.begin)]);
    std::vector<std::vector<Complex>> b_phys_own;
    if (!symmetric) {
        b_phys_own.resize(static_cast<std::size_t>(mr.end - mr.begin));
        for (int m = mr.begin; m < mr.end; ++m)
            ws.to_physical(b.order(m), b_phys_own[static_cast<std::size_t>(m - mr.begin)]);
    }
    const auto& b_phys = symmetric ? a_phys : b_phys_own;
    const int b_base = symmetric ? lr.begin : mr.begin;

    std::vector<Complex> product(p);
    std::vector<Complex> coeffs;
    for (int r = rr.begin; r < rr.end; ++r) {
        std::fill(product.begin(), product.end(), Complex{});
        bool touched = false;
        for (const auto& pair : pairs) {
            const double coeff = c(pair.l, pair.m, r);
            if (coeff == 0.0) continue;
            touched = true;
            const double w = pair.weight * coeff;
            const auto& av = a_phys[static_cast<std::size_t>(pair.l - lr.begin)];
            const auto& bv = b_phys[static_cast<std::size_t>(pair.m - b_base)];
            for (std::size_t j = 0; j < p; ++j) {
                const double re = av[j].real() * bv[j].real() - av[j].imag() * bv[j].imag();
                const double im = av[j].real() * bv[j].imag() + av[j].imag() * bv[j].real();
                product[j] += Complex(w * re, w * im);
            }
        }
        if (!touched) continue;
        ws.to_spectral(product, coeffs);
        auto& row = acc[static_cast<std::size_t>(r - rr.begin)];
        for (std::size_t i = 0; i < row.size(); ++i) row[i] += coeffs[i];
    }
}

} // namespace

PCField build_initial_field(int n_modes, int n_orders, double alpha0, double alpha1) {
    if (n_modes < 4) throw std::invalid_argument("build_initial_field: need N >= 4");
    if (n_orders < 2)
        throw std::invalid_argument(
            "build_initial_field: need M >= 2 to represent the degree-1 chaos content");
    PCField u(n_modes, n_orders);
    u(1, 0) = Complex(0.0, -0.5 * alpha0);
    u(-1, 0) = Complex(0.0, 0.5 * alpha0);
    u(1, 1) = Complex(0.0, -0.5 * alpha1);
    u(-1, 1) = Complex(0.0, 0.5 * alpha1);
    return u;
}

void truncated_convolution(std::span<const Complex> a, std::span<const Complex> b,
                           std::span<Complex> out) {
    if (a.size() != b.size() || a.size() != out.size())
        throw std::invalid_argument("truncated_convolution: band sizes differ");
    const int n = static_cast<int>(a.size());
    const int kmin = -n / 2;
    const int kmax = n / 2 - 1;
    for (int k = kmin; k <= kmax; ++k) {
        const int p_lo = std::max(kmin, k - kmax);
        const int p_hi = std::min(kmax, k - kmin);
        double re = 0.0;
        double im = 0.0;
        for (int p = p_lo; p <= p_hi; ++p) {
            const Complex x = a[static_cast<std::size_t>(p - kmin)];
            const Complex y = b[static_cast<std::size_t>(k - p - kmin)];
            re += x.real() * y.real() - x.imag() * y.imag();
            im += x.real() * y.imag() + x.imag() * y.real();
        }
        out[static_cast<std::size_t>(k - kmin)] = Complex(re, im);
    }
}

std::vector<Complex> truncated_convolution(std::span<const Complex> a,
                                           std::span<const Complex> b) {
    std::vector<Complex> out(a.size());
    truncated_convolution(a, b, out);
    return out;
}

void add_advection(const PCField& a, const PCField& b, OrderRange lr, OrderRange mr,
                   OrderRange rr, const TripleTensor& c, double scale, PCField& out,
                   ConvolutionMethod method) {
    if (lr.empty() || mr.empty() || rr.empty()) return;
    check_ranges(a, b, lr, mr, rr, c, out);

    const bool symmetric = (&a == &b) && lr == mr;
    const auto pairs = active_pairs(symmetric, lr, mr, rr);
    if (pairs.empty()) return;

    std::vector<std::vector<Complex>> acc(static_cast<std::size_t>(rr.end - rr.begin),
                                          std::vector<Complex>(static_cast<std::size_t>(out.n_modes())));
    if (method == ConvolutionMethod::direct)
        advection_direct(a, b, pairs, rr, c, acc);
    else
        advection_transform(a, b, symmetric, pairs, lr, mr, rr, c, acc);
    apply_wavenumber_factor(acc, rr, scale, out);
}

void add_viscous(const PCField& u, double nu, OrderRange rr, PCField& out) {
    if (nu == 0.0) return;
    for (int r = rr.begin; r < rr.end; ++r) {
        for (int k = u.k_min(); k <= u.k_max(); ++k) {
            const double kk = static_cast<double>(k) * k;
            out(k, r) -= nu * kk * u(k, r);
        }
    }
}

PCField full_rhs(const PCField& u, const BurgersParams& params, const TripleTensor& c,
                 ConvolutionMethod method) {
    const OrderRange all{0, u.n_orders()};
    PCField du(u.n_modes(), u.n_orders());
    add_advection(u, u, all, all, all, c, 1.0, du, method);
    add_viscous(u, params.nu, all, du);
    du.zero_nyquist();
    return du;
}

RhsFunction full_system_rhs(int n_modes, int n_orders, BurgersParams params, const TripleTensor& c,
                            ConvolutionMethod method) {
    return [n_modes, n_orders, params, &c, method](double, std::span<const Complex> state,
                                                     std::span<Complex> derivative) {
        const PCField u(n_modes, n_orders, state);
        const PCField du = full_rhs(u, params, c, method);
        std::copy(du.data().begin(), du.data().end(), derivative.begin());
    };
}

} // namespace mzuq
