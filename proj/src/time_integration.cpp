#include "mzuq/time_integration.hpp"

#include <cmath>
#include <sstream>

namespace mzuq {

IntegrationError::IntegrationError(double time, const std::string& what)
    : std::runtime_error(what), time_(time) {}

long StepperConfig::step_count() const { return std::lround(t_end / dt); }

void StepperConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
    if (!(t_end > 0.0)) throw std::invalid_argument("end time must be positive");
    if (t_end < dt) throw std::invalid_argument("end time must be at least one time step");
    if (observer_stride < 1) throw std::invalid_argument("observer stride must be >= 1");
}

void HeunStepper::step(StateVector& state, const RhsFunction& rhs, double t, double dt) {
    const std::size_t n = state.size();
    k1_.resize(n);
    k2_.resize(n);
    stage_.resize(n);

    rhs(t, state, k1_);
    for (std::size_t i = 0; i < n; ++i) stage_[i] = state[i] + dt * k1_[i];
    rhs(t + dt, stage_, k2_);

    const double half = 0.5 * dt;
    bool finite = true;
    for (std::size_t i = 0; i < n; ++i) {
        state[i] += half * (k1_[i] + k2_[i]);
        finite = finite && std::isfinite(state[i].real()) && std::isfinite(state[i].imag());
    }
    if (!finite) {
        std::ostringstream msg;
        msg << "non-finite state after step ending at t = " << (t + dt);
        throw IntegrationError(t + dt, msg.str());
    }
}

StateVector heun_step(std::span<const Complex> state, const RhsFunction& rhs, double t, double dt) {
    StateVector out(state.begin(), state.end());
    HeunStepper stepper;
    stepper.step(out, rhs, t, dt);
    return out;
}

StateVector evolve(StateVector state, const RhsFunction& rhs, const StepperConfig& config,
                   const Observer& observer) {
    config.validate();
    const long steps = config.step_count();
    HeunStepper stepper;
    if (observer) observer(0.0, state);
    for (long n = 0; n < steps; ++n) {
        const double t = static_cast<double>(n) * config.dt;
        stepper.step(state, rhs, t, config.dt);
        if (observer && (n + 1) % config.observer_stride == 0)
            observer(static_cast<double>(n + 1) * config.dt, state);
    }
    return state;
}

} // namespace mzuq
