#pragma once

#include "mzuq/chaos_basis.hpp"
#include "mzuq/mz_reduction.hpp"
#include "mzuq/pc_field.hpp"
#include "mzuq/spectral_burgers.hpp"
#include "mzuq/uq_stats.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mzuq {

/// Raised when the estimator history would exceed its configured cap.
class HistoryCapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Uniformly sampled record of the full trajectory used to fit the memory length.
///
/// Sample j (t_j = j dt) holds, on the resolved orders:
///   f_j = 2 * PLQL evaluated on the projected full state,
///   q_j = the unresolved forcing (petql_term) of the full state,
///   u_j = the resolved coefficients of the full state.
class EstimatorHistory {
public:
    EstimatorHistory(double dt, int n_modes, int resolved, std::size_t sample_cap = 0);

    double dt() const { return dt_; }
    int n_modes() const { return n_modes_; }
    int resolved() const { return resolved_; }
    std::size_t sample_count() const { return f_.size(); }
    /// Index of the newest sample (-1 when empty).
    int n_t() const { return static_cast<int>(f_.size()) - 1; }

    /// Evaluates f, q and u on `full_state` and appends them. `t` must equal (n_t + 1) dt.
    void record_sample(double t, const PCField& full_state, const TripleTensor& c,
                       ConvolutionMethod method = ConvolutionMethod::direct);

    /// Appends precomputed (N, resolved) records; same time contract as record_sample.
    void append(double t, PCField f, PCField q, PCField u);

    const PCField& f(int j) const { return f_.at(static_cast<std::size_t>(j)); }
    const PCField& q(int j) const { return q_.at(static_cast<std::size_t>(j)); }
    const PCField& u(int j) const { return u_.at(static_cast<std::size_t>(j)); }

private:
    void check_time(double t) const;

    double dt_;
    int n_modes_;
    int resolved_;
    std::size_t sample_cap_;
    std::vector<PCField> f_, q_, u_;
};

/// Trapezoidal memory integral at horizon n (default: newest sample):
///
///   I_{kr} = [f_n + 2 sum_{j=1}^{n-1} y^{n-j} f_j + y^n f_0] dt / 2
Complex memory_integral(const EstimatorHistory& history, double y, int k, int r,
                        std::optional<int> horizon = std::nullopt);
/// I_{kr} for every resolved (k, r).
PCField memory_integral_field(const EstimatorHistory& history, double y,
                              std::optional<int> horizon = std::nullopt);

enum class SolveStatus { ok, no_root, degenerate };
std::string to_string(SolveStatus status);

struct YSolution {
    SolveStatus status = SolveStatus::ok;
    double y = 0.0;
    int iterations = 0;
    double residual = 0.0;
};

/// Real polynomial in y whose root in (0, 1) matches the squared l2 norm
/// evolution of the resolved variables between the reduced and full systems:
///
///   sum_{k,r} 2 Re{I_{kr}(y) conj(u_{kr})} - sum_{k,r} 2 Re{q_{kr} conj(u_{kr})}
class MatchingPolynomial {
public:
    explicit MatchingPolynomial(const EstimatorHistory& history);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    /// Coefficient of y^s.
    double coefficient(int s) const { return coeffs_.at(static_cast<std::size_t>(s)); }
    double target() const { return target_; }
    /// Largest |coefficient| of the integral side.
    double scale() const { return scale_; }

    double value(double y) const;
    /// (value, derivative) by Horner.
    std::pair<double, double> value_and_derivative(double y) const;

private:
    std::vector<double> coeffs_; // includes -target in coeffs_[0]
    double target_ = 0.0;
    double scale_ = 0.0;
};

/// Solves the matching condition for y in (0, 1).
///
/// Newton from `previous_y`; when there is no previous estimate, or Newton
/// leaves (0, 1) or stalls, a 64-interval sign scan brackets a root and a
/// safeguarded Newton-bisection refines it. Without a previous estimate the
/// largest bracketed root is taken; otherwise the one closest to it.
YSolution solve_y(const EstimatorHistory& history, std::optional<double> previous_y = std::nullopt);
YSolution solve_y(const MatchingPolynomial& poly, std::optional<double> previous_y = std::nullopt);

/// t0 = -2 dt / ln y, for y in (0, 1).
double t0_from_y(double y, double dt);

/// max_{l in [1, n_t]} |y_curr^l - y_prev^l|
double epsilon(double y_prev, double y_curr, int n_t);

struct EstimatorControls {
    int warmup = 50;          // steps before the first estimate
    int confirm_window = 25;  // estimates with epsilon above its running minimum
    int stride = 1;           // estimate every `stride` steps
    std::size_t history_cap = 20000; // samples
};

struct EstimateRecord {
    double t = 0.0;
    double y_hat = 0.0;
    double t0_hat = 0.0;
    double epsilon = 0.0; // NaN for the first accepted estimate and skipped steps
    int newton_iterations = 0;
    double residual = 0.0; // |matching polynomial| at y_hat
    SolveStatus status = SolveStatus::ok;
};

/// Tracks the running minimum of epsilon(t) and confirms it once epsilon has
/// stayed above it for `confirm_window` consecutive estimates.
class EpsilonMonitor {
public:
    explicit EpsilonMonitor(int confirm_window);

    /// Feeds one accepted estimate carrying a finite epsilon. Returns true
    /// once the minimum is confirmed; further calls keep returning true.
    bool update(const EstimateRecord& record);

    bool has_minimum() const { return has_best_; }
    const EstimateRecord& minimum() const;
    bool confirmed() const { return confirmed_; }
    int steps_above_minimum() const { return above_; }

private:
    int confirm_window_;
    EstimateRecord best_;
    bool has_best_ = false;
    int above_ = 0;
    bool confirmed_ = false;
};

struct SwitchReport {
    bool switched = false; // false: NoSwitch, the run stayed on the full system
    double t_min = 0.0;
    double t0_hat = 0.0;
    double y_hat = 0.0;
    double epsilon_min = 0.0;
    int newton_iterations_max = 0;
};

struct AdaptiveConfig {
    int n_modes = 196;
    int n_orders = 7;
    int resolved = 2;
    int n0 = 1;
    int stat_orders = 2;
    double dt = 1e-3;
    double t_end = 3.0;
    int observer_stride = 10;
    BurgersParams params;
    EstimatorControls estimator;
    ConvolutionMethod method = ConvolutionMethod::direct;

    void validate() const;
};

struct TaggedStat {
    StatSample stat;
    bool reduced = false;
};

struct AdaptiveResult {
    SwitchReport report;
    std::vector<TaggedStat> stats;
    std::vector<EstimateRecord> estimates;
    PCField switch_state;        // full state at t_min (when switched)
    PCField switch_memory;       // w0 initialization at t_min (when switched)
    PCField final_resolved;      // resolved coefficients at t_end
    double phase1_seconds = 0.0; // full system integration plus estimation
    double phase1_integration_seconds = 0.0;
    long phase1_steps = 0;
    double phase2_seconds = 0.0;
    long phase2_steps = 0;
};

/// Evolves the full system while estimating t0 every step; once the minimum
/// of epsilon(t) is confirmed, restarts from the state at t_min and evolves
/// only the reduced model with t0 = t0_hat(t_min) to t_end.
AdaptiveResult adaptive_run(const AdaptiveConfig& config);

} // namespace mzuq
