#pragma once

#include "mzuq/chaos_basis.hpp"
#include "mzuq/pc_field.hpp"

namespace mzuq {

// Moments of the energy E = 1/2 sum_k 2 pi |u_k|^2 and of the squared gradient
// norm G = sum_k 2 pi k^2 |u_k|^2, read from the first `stat_orders` chaos
// coefficients of each mode.

double mean_energy(const PCField& u, int stat_orders);
double var_energy(const PCField& u, const QuadTensor& d, int stat_orders);
double mean_gradient(const PCField& u, int stat_orders);
double var_gradient(const PCField& u, const QuadTensor& d, int stat_orders);

struct StatSample {
    double t = 0.0;
    double mean_energy = 0.0;
    double var_energy = 0.0;
    double mean_gradient = 0.0;
    double var_gradient = 0.0;

    double std_energy() const;
    double std_gradient() const;
};

/// All four statistics at once. Variances in [-1e-10, 0) are clamped to 0.
StatSample compute_stats(double t, const PCField& u, const QuadTensor& d, int stat_orders);

} // namespace mzuq
