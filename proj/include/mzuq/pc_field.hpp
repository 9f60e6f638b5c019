#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace mzuq {

using Complex = std::complex<double>;

/// Polynomial-chaos coefficients u_{kr} of a Fourier-Galerkin field.
///
/// Wavenumbers k run over the band [-N/2, N/2-1]; chaos orders r over
/// [0, M). Storage is dense and order-major: all wavenumbers of order r are
/// contiguous, so `order(r)` is a span over the band.
class PCField {
public:
    PCField() = default;
    PCField(int n_modes, int n_orders);
    /// Copies `values` (length N*M, order-major).
    PCField(int n_modes, int n_orders, std::span<const Complex> values);

    int n_modes() const { return n_modes_; }
    int n_orders() const { return n_orders_; }
    int k_min() const { return -n_modes_ / 2; }
    int k_max() const { return n_modes_ / 2 - 1; }

    Complex& operator()(int k, int r) { return coeffs_[offset(k, r)]; }
    const Complex& operator()(int k, int r) const { return coeffs_[offset(k, r)]; }

    std::span<Complex> order(int r) {
        return {coeffs_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(n_modes_),
                static_cast<std::size_t>(n_modes_)};
    }
    std::span<const Complex> order(int r) const {
        return {coeffs_.data() + static_cast<std::size_t>(r) * static_cast<std::size_t>(n_modes_),
                static_cast<std::size_t>(n_modes_)};
    }

    std::span<Complex> data() { return coeffs_; }
    std::span<const Complex> data() const { return coeffs_; }
    std::size_t size() const { return coeffs_.size(); }

    void set_zero();
    /// Pins the unpaired mode k = -N/2 to zero in every order.
    void zero_nyquist();

    bool is_finite() const;
    /// Largest |u_{-k,r} - conj(u_{k,r})| over paired modes, together with |u_{-N/2,r}|.
    double reality_defect() const;
    double max_abs() const;

    friend bool same_shape(const PCField& a, const PCField& b) {
        return a.n_modes_ == b.n_modes_ && a.n_orders_ == b.n_orders_;
    }

private:
    std::size_t offset(int k, int r) const {
        return static_cast<std::size_t>(r) * static_cast<std::size_t>(n_modes_) +
               static_cast<std::size_t>(k + n_modes_ / 2);
    }

    int n_modes_ = 0;
    int n_orders_ = 0;
    std::vector<Complex> coeffs_;
};

/// Max-norm of a - b over all entries; shapes must agree.
double max_abs_difference(const PCField& a, const PCField& b);

} // namespace mzuq
