#include "mzuq/mc_oracle.hpp"

#include "mzuq/time_integration.hpp"
#include "mzuq/uq_stats.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <stdexcept>
#include <thread>

namespace mzuq {

void McConfig::validate() const {
    if (n_samples < 2) throw std::invalid_argument("monte carlo: need at least 2 samples for a variance");
    if (n_modes < 4 || n_modes % 2 != 0)
        throw std::invalid_argument("monte carlo: Fourier mode count must be even and >= 4");
    if (nu < 0.0) throw std::invalid_argument("monte carlo: viscosity must be non-negative");
    StepperConfig{dt, t_end, 1}.validate();
}

std::uint64_t splitmix64(std::uint64_t counter) {
    std::uint64_t z = counter + 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double draw_xi(const McConfig& cfg, int index) {
    if (cfg.antithetic && index % 2 == 1) return -draw_xi(cfg, index - 1);
    const std::uint64_t bits = splitmix64(cfg.seed + static_cast<std::uint64_t>(index));
    const double unit = static_cast<double>(bits >> 11) * 0x1.0p-53;
    return 2.0 * unit - 1.0;
}

PCField sample_trajectory(double xi, int n_modes, double nu, double dt, double t_end,
                          const SampleObserver& observer, double alpha0, double alpha1,
                          ConvolutionMethod method) {
    if (xi < -1.0 || xi > 1.0) throw std::invalid_argument("sample_trajectory: xi outside [-1, 1]");
    static const TripleTensor deterministic(1);

    PCField u0(n_modes, 1);
    const double amplitude = alpha0 + alpha1 * xi;
    u0(1, 0) = Complex(0.0, -0.5 * amplitude);
    u0(-1, 0) = Complex(0.0, 0.5 * amplitude);

    const BurgersParams params{nu, alpha0, alpha1};
    const auto rhs = full_system_rhs(n_modes, 1, params, deterministic, method);
    Observer wrapped;
    if (observer)
        wrapped = [&](double t, std::span<const Complex> s) { observer(t, PCField(n_modes, 1, s)); };
    StateVector final_state = evolve(StateVector(u0.data().begin(), u0.data().end()), rhs,
                                     StepperConfig{dt, t_end, 1}, wrapped);
    return PCField(n_modes, 1, final_state);
}

double MomentEstimate::stddev() const { return std::sqrt(std::max(variance, 0.0)); }

double MomentEstimate::stddev_stderr() const {
    const double s = stddev();
    return s > 0.0 ? variance_stderr / (2.0 * s) : 0.0;
}

MomentEstimate estimate_moments(const std::vector<double>& values) {
    const auto n = static_cast<double>(values.size());
    if (values.size() < 2) throw std::invalid_argument("estimate_moments: need at least 2 values");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= n;
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : values) {
        const double d2 = (v - mean) * (v - mean);
        m2 += d2;
        m4 += d2 * d2;
    }
    const double variance = m2 / (n - 1.0);
    m4 /= n;
    const double var_of_var = std::max(0.0, (m4 - variance * variance * (n - 3.0) / (n - 1.0)) / n);

    MomentEstimate est;
    est.mean = mean;
    est.mean_stderr = std::sqrt(variance / n);
    est.variance = variance;
    est.variance_stderr = std::sqrt(var_of_var);
    return est;
}

std::vector<McStat> mc_statistics(const McConfig& cfg, const std::vector<double>& times) {
    cfg.validate();
    std::vector<long> wanted;
    for (double t : times) {
        if (t < 0.0 || t > cfg.t_end + 0.5 * cfg.dt)
            throw std::invalid_argument("mc_statistics: requested time outside [0, t_end]");
        wanted.push_back(std::lround(t / cfg.dt));
    }

    const auto n = static_cast<std::size_t>(cfg.n_samples);
    const std::size_t n_times = wanted.size();
    std::vector<double> energy(n * n_times), gradient(n * n_times);

    auto run_sample = [&](std::size_t i) {
        const double xi = draw_xi(cfg, static_cast<int>(i));
        long step = 0;
        sample_trajectory(
            xi, cfg.n_modes, cfg.nu, cfg.dt, cfg.t_end,
            [&](double, const PCField& u) {
                for (std::size_t j = 0; j < n_times; ++j) {
                    if (wanted[j] != step) continue;
                    energy[i * n_times + j] = mean_energy(u, 1);
                    gradient[i * n_times + j] = mean_gradient(u, 1);
                }
                ++step;
            },
            cfg.alpha0, cfg.alpha1, cfg.method);
    };

    unsigned workers = cfg.threads != 0 ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) run_sample(i);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                try {
                    for (std::size_t i = w; i < n; i += workers) run_sample(i);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        pool.clear();
        for (const auto& e : errors)
            if (e) std::rethrow_exception(e);
    }

    std::vector<McStat> out;
    std::vector<double> column(n);
    for (std::size_t j = 0; j < n_times; ++j) {
        McStat stat;
        stat.t = static_cast<double>(wanted[j]) * cfg.dt;
        for (std::size_t i = 0; i < n; ++i) column[i] = energy[i * n_times + j];
        stat.energy = estimate_moments(column);
        for (std::size_t i = 0; i < n; ++i) column[i] = gradient[i * n_times + j];
        stat.gradient = estimate_moments(column);
        out.push_back(stat);
    }
    return out;
}

} // namespace mzuq
