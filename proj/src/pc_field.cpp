#include "mzuq/pc_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mzuq {

PCField::PCField(int n_modes, int n_orders) : n_modes_(n_modes), n_orders_(n_orders) {
    if (n_modes < 2 || n_modes % 2 != 0)
        throw std::invalid_argument("PCField: number of Fourier modes must be even and >= 2");
    if (n_orders < 1) throw std::invalid_argument("PCField: need at least one chaos order");
    coeffs_.assign(static_cast<std::size_t>(n_modes) * static_cast<std::size_t>(n_orders),
                   Complex{});
}

PCField::PCField(int n_modes, int n_orders, std::span<const Complex> values)
    : PCField(n_modes, n_orders) {
    if (values.size() != coeffs_.size())
        throw std::invalid_argument("PCField: flat data length does not match N*M");
    std::copy(values.begin(), values.end(), coeffs_.begin());
}

void PCField::set_zero() { std::fill(coeffs_.begin(), coeffs_.end(), Complex{}); }

void PCField::zero_nyquist() {
    for (int r = 0; r < n_orders_; ++r) (*this)(k_min(), r) = Complex{};
}

bool PCField::is_finite() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Complex& z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

double PCField::reality_defect() const {
    double defect = 0.0;
    for (int r = 0; r < n_orders_; ++r) {
        defect = std::max(defect, std::abs((*this)(k_min(), r)));
        defect = std::max(defect, std::abs((*this)(0, r).imag()));
        for (int k = 1; k <= k_max(); ++k)
            defect = std::max(defect, std::abs((*this)(-k, r) - std::conj((*this)(k, r))));
    }
    return defect;
}

double PCField::max_abs() const {
    double m = 0.0;
    for (const auto& z : coeffs_) m = std::max(m, std::abs(z));
    return m;
}

double max_abs_difference(const PCField& a, const PCField& b) {
    if (!same_shape(a, b)) throw std::invalid_argument("max_abs_difference: shape mismatch");
    double m = 0.0;
    const auto da = a.data();
    const auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i) m = std::max(m, std::abs(da[i] - db[i]));
    return m;
}

} // namespace mzuq
