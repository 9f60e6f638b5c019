#include "mzuq/runner.hpp"

#include "mzuq/mz_reduction.hpp"
#include "mzuq/time_integration.hpp"
#include "mzuq/uq_stats.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <ostream>

namespace mzuq {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

// Stats every observer stride for a system whose resolved view is `view(state)`.
template <class View>
std::vector<TaggedStat> integrate_with_stats(StateVector state, const RhsFunction& rhs,
                                             const RunConfig& config, const QuadTensor& d,
                                             bool reduced, View&& view, double& seconds_per_step) {
    std::vector<TaggedStat> stats;
    const StepperConfig stepper{config.dt, config.t_end, config.observer_stride};
    const auto start = Clock::now();
    evolve(std::move(state), rhs, stepper, [&](double t, std::span<const Complex> s) {
        stats.push_back({compute_stats(t, view(s), d, config.lambda_stat), reduced});
    });
    seconds_per_step = seconds_since(start) / static_cast<double>(stepper.step_count());
    return stats;
}

std::vector<double> observation_times(const RunConfig& config) {
    const long steps = StepperConfig{config.dt, config.t_end, config.observer_stride}.step_count();
    std::vector<double> times;
    for (long n = 0; n <= steps; n += config.observer_stride) times.push_back(static_cast<double>(n) * config.dt);
    return times;
}

class CsvStream {
public:
    explicit CsvStream(std::ostream& os) : os_(os), saved_(os.precision()), flags_(os.flags()) {
        os_.precision(15);
        os_.unsetf(std::ios::floatfield);
    }
    ~CsvStream() {
        os_.precision(saved_);
        os_.flags(flags_);
    }
    CsvStream(const CsvStream&) = delete;
    CsvStream& operator=(const CsvStream&) = delete;

    std::ostream& out() { return os_; }

private:
    std::ostream& os_;
    std::streamsize saved_;
    std::ios::fmtflags flags_;
};

void write_number(std::ostream& os, double v) {
    if (std::isnan(v))
        os << "nan";
    else
        os << v;
}

} // namespace

RunOutputs simulate(const RunConfig& config) {
    config.validate();
    RunOutputs out;
    const auto start = Clock::now();
    const BurgersParams params{config.nu, config.alpha0, config.alpha1};

    switch (config.mode) {
    case RunMode::full: {
        const auto c = triple_product_tensor(config.n_pc);
        const auto d = quad_product_tensor(config.lambda_stat);
        PCField u0 = build_initial_field(config.n_modes, config.n_pc, config.alpha0, config.alpha1);
        out.stats = integrate_with_stats(
            StateVector(u0.data().begin(), u0.data().end()),
            full_system_rhs(config.n_modes, config.n_pc, params, c, config.convolution), config, d, false,
            [&](std::span<const Complex> s) { return PCField(config.n_modes, config.n_pc, s); },
            out.full_seconds_per_step);
        break;
    }
    case RunMode::markovian:
    case RunMode::memory: {
        const auto c = triple_product_tensor(config.n_pc);
        const auto d = quad_product_tensor(config.lambda_stat);
        const bool memory = config.mode == RunMode::memory;
        const ReductionSpec spec{config.lambda, config.n_pc, memory ? *config.t0 : 0.0, config.n0, memory};
        const ReducedModel model(spec, params, c, config.n_modes, config.convolution);
        const PCField u0 = build_initial_field(config.n_modes, config.n_pc, config.alpha0, config.alpha1);
        const MemoryState w = memory ? MemoryState(config.n_modes, config.lambda, config.n0) : MemoryState{};
        out.stats = integrate_with_stats(
            model.pack(u0, w), model.as_rhs(), config, d, true,
            [&](std::span<const Complex> s) { return model.unpack_resolved(s); },
            out.reduced_seconds_per_step);
        break;
    }
    case RunMode::adaptive: {
        AdaptiveResult result = adaptive_run(config.adaptive_config());
        out.stats = std::move(result.stats);
        out.estimates = std::move(result.estimates);
        out.report = result.report;
        if (result.phase1_steps > 0)
            out.full_seconds_per_step =
                result.phase1_integration_seconds / static_cast<double>(result.phase1_steps);
        if (result.phase2_steps > 0)
            out.reduced_seconds_per_step = result.phase2_seconds / static_cast<double>(result.phase2_steps);
        break;
    }
    case RunMode::mc:
        out.mc = mc_statistics(config.mc_config(), observation_times(config));
        break;
    }
    out.wall_seconds = seconds_since(start);
    return out;
}

void write_stats_csv(std::ostream& os, const std::vector<TaggedStat>& stats) {
    CsvStream csv(os);
    os << "t,mean_energy,std_energy,mean_gradient,std_gradient,mode_active\n";
    for (const auto& row : stats) {
        const auto& s = row.stat;
        os << s.t << ',' << s.mean_energy << ',' << s.std_energy() << ',' << s.mean_gradient << ','
           << s.std_gradient() << ',' << (row.reduced ? "reduced" : "full") << '\n';
    }
}

void write_estimator_csv(std::ostream& os, const std::vector<EstimateRecord>& estimates) {
    CsvStream csv(os);
    os << "t,y_hat,t0_hat,epsilon,newton_iters,status\n";
    for (const auto& e : estimates) {
        const bool ok = e.status == SolveStatus::ok;
        os << e.t << ',';
        write_number(os, ok ? e.y_hat : std::nan(""));
        os << ',';
        write_number(os, ok ? e.t0_hat : std::nan(""));
        os << ',';
        write_number(os, e.epsilon);
        os << ',' << e.newton_iterations << ',' << to_string(e.status) << '\n';
    }
}

void write_mc_csv(std::ostream& os, const std::vector<McStat>& stats) {
    CsvStream csv(os);
    os << "t,stat,value,stderr\n";
    for (const auto& s : stats) {
        auto row = [&](const char* name, double value, double err) {
            os << s.t << ',' << name << ',' << value << ',' << err << '\n';
        };
        row("mean_energy", s.energy.mean, s.energy.mean_stderr);
        row("var_energy", s.energy.variance, s.energy.variance_stderr);
        row("std_energy", s.energy.stddev(), s.energy.stddev_stderr());
        row("mean_gradient", s.gradient.mean, s.gradient.mean_stderr);
        row("var_gradient", s.gradient.variance, s.gradient.variance_stderr);
        row("std_gradient", s.gradient.stddev(), s.gradient.stddev_stderr());
    }
}

void write_manifest(std::ostream& os, const RunConfig& config, const RunOutputs& outputs) {
    CsvStream guard(os);
    for (const auto& [key, value] : config.entries()) os << key << " = " << value << '\n';
    if (outputs.report) {
        const auto& r = *outputs.report;
        os << "switched = " << (r.switched ? "true" : "false") << '\n';
        os << "t_min = " << r.t_min << '\n';
        os << "t0_hat = " << r.t0_hat << '\n';
        os << "y_hat = " << r.y_hat << '\n';
        os << "epsilon_min = " << r.epsilon_min << '\n';
        os << "newton_iterations_max = " << r.newton_iterations_max << '\n';
        if (!r.switched)
            os << "warning = NoSwitch: epsilon minimum never confirmed before t_end; "
                  "the run stayed on the full system\n";
    }
    os << "wall_seconds = " << outputs.wall_seconds << '\n';
    if (outputs.full_seconds_per_step > 0.0)
        os << "full_seconds_per_step = " << outputs.full_seconds_per_step << '\n';
    if (outputs.reduced_seconds_per_step > 0.0)
        os << "reduced_seconds_per_step = " << outputs.reduced_seconds_per_step << '\n';
    if (outputs.full_seconds_per_step > 0.0 && outputs.reduced_seconds_per_step > 0.0) {
        os << "reduced_speedup = " << outputs.full_seconds_per_step / outputs.reduced_seconds_per_step << '\n';
        os << "reduced_faster = "
           << (outputs.reduced_seconds_per_step < outputs.full_seconds_per_step ? "true" : "false") << '\n';
    }
}

int run(const RunConfig& config, std::ostream& log) {
    RunOutputs outputs;
    try {
        outputs = simulate(config);
    } catch (const ConfigError& e) {
        log << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const IntegrationError& e) {
        log << "integration failure at t = " << e.time() << ": " << e.what() << '\n';
        return kExitNumeric;
    } catch (const HistoryCapExceeded& e) {
        log << "estimator error: " << e.what() << '\n';
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        log << "invalid argument: " << e.what() << '\n';
        return kExitConfig;
    }

    auto open = [&](const std::string& suffix) {
        std::ofstream f(config.out + suffix);
        if (!f) throw ConfigError("cannot write '" + config.out + suffix + "'");
        return f;
    };
    try {
        if (config.mode == RunMode::mc) {
            auto f = open("_mc.csv");
            write_mc_csv(f, outputs.mc);
        } else {
            auto f = open("_stats.csv");
            write_stats_csv(f, outputs.stats);
        }
        if (config.mode == RunMode::adaptive) {
            auto f = open("_estimator.csv");
            write_estimator_csv(f, outputs.estimates);
        }
        auto f = open("_manifest");
        write_manifest(f, config, outputs);
    } catch (const ConfigError& e) {
        log << "output error: " << e.what() << '\n';
        return kExitConfig;
    }

    if (outputs.report) {
        CsvStream guard(log);
        if (outputs.report->switched)
            log << "switched to reduced model at t_min = " << outputs.report->t_min
                << " with t0_hat = " << outputs.report->t0_hat << '\n';
        else
            log << "warning: no switch; epsilon minimum never confirmed (argmin t = "
                << outputs.report->t_min << ")\n";
    }
    return kExitOk;
}

} // namespace mzuq
