#pragma once

#include "mzuq/pc_field.hpp"
#include "mzuq/spectral_burgers.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace mzuq {

/// Monte Carlo over xi ~ U[-1, 1] of the deterministic Fourier-Galerkin Burgers
/// equation with initial condition (alpha0 + alpha1 xi) sin x.
///
/// Sample i draws xi_i from the counter-based SplitMix64 stream: the 64-bit
/// output for counter (seed + i) is mapped to [0, 1) by its top 53 bits, then
/// to [-1, 1). Draws therefore do not depend on thread scheduling. With
/// `antithetic`, odd samples reuse -xi of the preceding even sample.
struct McConfig {
    int n_samples = 2000;
    std::uint64_t seed = 20130101;
    int n_modes = 64;
    double nu = 0.1;
    double dt = 1e-3;
    double t_end = 1.0;
    double alpha0 = 1.0;
    double alpha1 = 1.0;
    bool antithetic = false;
    ConvolutionMethod method = ConvolutionMethod::direct;
    unsigned threads = 0; // 0: hardware concurrency

    void validate() const;
};

std::uint64_t splitmix64(std::uint64_t counter);
/// xi for sample `index`.
double draw_xi(const McConfig& cfg, int index);

using SampleObserver = std::function<void(double t, const PCField& u)>;

/// Evolves one deterministic (M = 1) realization; the observer sees t = 0
/// and every step. Returns the final state.
PCField sample_trajectory(double xi, int n_modes, double nu, double dt, double t_end,
                          const SampleObserver& observer = {}, double alpha0 = 1.0,
                          double alpha1 = 1.0,
                          ConvolutionMethod method = ConvolutionMethod::direct);

/// Sample mean, unbiased sample variance, and their standard errors.
struct MomentEstimate {
    double mean = 0.0;
    double mean_stderr = 0.0;
    double variance = 0.0;
    double variance_stderr = 0.0;

    double stddev() const;
    /// Delta-method standard error of the sample standard deviation.
    double stddev_stderr() const;
};

MomentEstimate estimate_moments(const std::vector<double>& values);

struct McStat {
    double t = 0.0;
    MomentEstimate energy;
    MomentEstimate gradient;
};

/// Statistics of E = 1/2 sum 2 pi |u_k|^2 and G = sum 2 pi k^2 |u_k|^2 at each
/// requested time (rounded to the nearest step).
std::vector<McStat> mc_statistics(const McConfig& cfg, const std::vector<double>& times);

} // namespace mzuq
