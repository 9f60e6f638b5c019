#pragma once

#include "mzuq/pc_field.hpp"

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace mzuq {

using StateVector = std::vector<Complex>;

/// du/dt = rhs(t, u), written into `derivative` (same length as `state`).
using RhsFunction =
    std::function<void(double t, std::span<const Complex> state, std::span<Complex> derivative)>;

/// Receives (t, state) on observed steps. Must not retain the span.
using Observer = std::function<void(double t, std::span<const Complex> state)>;

/// Raised when a step produces non-finite values.
class IntegrationError : public std::runtime_error {
public:
    IntegrationError(double time, const std::string& what);
    double time() const { return time_; }

private:
    double time_;
};

struct StepperConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    int observer_stride = 1;

    /// round(t_end / dt)
    long step_count() const;
    void validate() const;
};

/// Explicit trapezoidal (Heun) stepper with reusable stage buffers.
///
///   k1 = f(t, u), k2 = f(t + dt, u + dt k1), u <- u + dt/2 (k1 + k2)
class HeunStepper {
public:
    /// Advances `state` in place from t to t + dt. Throws IntegrationError on non-finite output.
    void step(StateVector& state, const RhsFunction& rhs, double t, double dt);

private:
    StateVector k1_, k2_, stage_;
};

StateVector heun_step(std::span<const Complex> state, const RhsFunction& rhs, double t, double dt);

/// Steps from t = 0 to t_end. The observer sees t = 0 and every stride-th step.
StateVector evolve(StateVector state, const RhsFunction& rhs, const StepperConfig& config,
                   const Observer& observer = {});

} // namespace mzuq
