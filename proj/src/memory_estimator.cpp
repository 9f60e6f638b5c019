#include "mzuq/memory_estimator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace mzuq {

namespace {

constexpr double kStepTolerance = 1e-14;
constexpr double kResidualTolerance = 1e-13;
constexpr double kDegenerateLevel = 1e-14;
constexpr int kNewtonMaxIterations = 20;
constexpr int kScanIntervals = 64;
constexpr int kBracketMaxIterations = 200;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

} // namespace

// ---------------------------------------------------------------------------
// History

EstimatorHistory::EstimatorHistory(double dt, int n_modes, int resolved, std::size_t sample_cap)
    : dt_(dt), n_modes_(n_modes), resolved_(resolved), sample_cap_(sample_cap) {
    if (!(dt > 0.0)) throw std::invalid_argument("EstimatorHistory: dt must be positive");
    if (resolved < 1) throw std::invalid_argument("EstimatorHistory: need at least one resolved order");
}

void EstimatorHistory::check_time(double t) const {
    const double expected = static_cast<double>(n_t() + 1) * dt_;
    if (std::abs(t - expected) > 1e-9 * std::max(1.0, std::abs(expected))) {
        std::ostringstream msg;
        msg << "EstimatorHistory: sample time " << t << " breaks uniform spacing (expected "
            << expected << ")";
        throw std::invalid_argument(msg.str());
    }
    if (sample_cap_ != 0 && f_.size() >= sample_cap_) {
        std::ostringstream msg;
        msg << "estimator history cap of " << sample_cap_ << " samples reached at t = " << t
            << "; raise history_cap to keep the full memory record";
        throw HistoryCapExceeded(msg.str());
    }
}

void EstimatorHistory::record_sample(double t, const PCField& full_state, const TripleTensor& c,
                                     ConvolutionMethod method) {
    if (full_state.n_modes() != n_modes_ || full_state.n_orders() < resolved_)
        throw std::invalid_argument("EstimatorHistory: state shape does not match history");
    check_time(t);
    const int n_orders = full_state.n_orders();

    PCField u(n_modes_, resolved_);
    for (int r = 0; r < resolved_; ++r) {
        const auto src = full_state.order(r);
        std::copy(src.begin(), src.end(), u.order(r).begin());
    }
    PCField f = plql_kernel(u, c, resolved_, n_orders, method);
    for (auto& z : f.data()) z *= 2.0;
    PCField q = petql_term(full_state, c, resolved_, method);

    f_.push_back(std::move(f));
    q_.push_back(std::move(q));
    u_.push_back(std::move(u));
}

void EstimatorHistory::append(double t, PCField f, PCField q, PCField u) {
    for (const PCField* p : {&f, &q, &u})
        if (p->n_modes() != n_modes_ || p->n_orders() != resolved_)
            throw std::invalid_argument("EstimatorHistory::append: record shape mismatch");
    check_time(t);
    f_.push_back(std::move(f));
    q_.push_back(std::move(q));
    u_.push_back(std::move(u));
}

// ---------------------------------------------------------------------------
// Memory integral

namespace {

int resolve_horizon(const EstimatorHistory& history, std::optional<int> horizon) {
    const int n = horizon.value_or(history.n_t());
    if (n < 1 || n > history.n_t())
        throw std::invalid_argument("memory_integral: need a horizon n_t >= 1 within the history");
    return n;
}

} // namespace

Complex memory_integral(const EstimatorHistory& history, double y, int k, int r,
                        std::optional<int> horizon) {
    const int n = resolve_horizon(history, horizon);
    Complex sum = history.f(n)(k, r);
    double power = 1.0;
    for (int j = n - 1; j >= 1; --j) {
        power *= y;
        sum += 2.0 * power * history.f(j)(k, r);
    }
    power *= y;
    sum += power * history.f(0)(k, r);
    return sum * (0.5 * history.dt());
}

PCField memory_integral_field(const EstimatorHistory& history, double y,
                              std::optional<int> horizon) {
    const int n = resolve_horizon(history, horizon);
    PCField out = history.f(n);
    auto dst = out.data();
    double power = 1.0;
    for (int j = n - 1; j >= 1; --j) {
        power *= y;
        const auto src = history.f(j).data();
        for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += 2.0 * power * src[i];
    }
    power *= y;
    const auto src0 = history.f(0).data();
    for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += power * src0[i];
    for (auto& z : dst) z *= 0.5 * history.dt();
    return out;
}

// ---------------------------------------------------------------------------
// Matching polynomial and root finding

std::string to_string(SolveStatus status) {
    switch (status) {
    case SolveStatus::ok: return "ok";
    case SolveStatus::no_root: return "no_root";
    case SolveStatus::degenerate: return "degenerate";
    }
    return "unknown";
}

MatchingPolynomial::MatchingPolynomial(const EstimatorHistory& history) {
    const int n = history.n_t();
    if (n < 1) throw std::invalid_argument("MatchingPolynomial: need n_t >= 1");

    // a_j = sum_{k,r} 2 Re{f_j conj(u_n)}
    const auto un = history.u(n).data();
    auto projection = [&](const PCField& field) {
        const auto v = field.data();
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += v[i].real() * un[i].real() + v[i].imag() * un[i].imag();
        return 2.0 * s;
    };

    const double dt = history.dt();
    coeffs_.assign(static_cast<std::size_t>(n) + 1, 0.0);
    coeffs_[0] = 0.5 * dt * projection(history.f(n));
    for (int s = 1; s <= n - 1; ++s) coeffs_[static_cast<std::size_t>(s)] = dt * projection(history.f(n - s));
    coeffs_[static_cast<std::size_t>(n)] = 0.5 * dt * projection(history.f(0));

    for (double a : coeffs_) scale_ = std::max(scale_, std::abs(a));
    target_ = projection(history.q(n));
    coeffs_[0] -= target_;
}

double MatchingPolynomial::value(double y) const {
    double v = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * y + *it;
    return v;
}

std::pair<double, double> MatchingPolynomial::value_and_derivative(double y) const {
    double v = 0.0;
    double dv = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        dv = dv * y + v;
        v = v * y + *it;
    }
    return {v, dv};
}

namespace {

std::optional<YSolution> newton_from(const MatchingPolynomial& poly, double y) {
    for (int it = 1; it <= kNewtonMaxIterations; ++it) {
        const auto [g, dg] = poly.value_and_derivative(y);
        if (std::abs(g) < kResidualTolerance) return YSolution{SolveStatus::ok, y, it - 1, std::abs(g)};
        if (dg == 0.0 || !std::isfinite(dg)) return std::nullopt;
        const double step = g / dg;
        y -= step;
        if (!(y > 0.0 && y < 1.0)) return std::nullopt;
        if (std::abs(step) < kStepTolerance)
            return YSolution{SolveStatus::ok, y, it, std::abs(poly.value(y))};
    }
    return std::nullopt;
}

// Safeguarded Newton-bisection on a sign-changing bracket [lo, hi].
YSolution refine_bracket(const MatchingPolynomial& poly, double lo, double hi) {
    double g_lo = poly.value(lo);
    double y = 0.5 * (lo + hi);
    int it = 0;
    for (; it < kBracketMaxIterations; ++it) {
        const auto [g, dg] = poly.value_and_derivative(y);
        if (std::abs(g) < kResidualTolerance) break;
        if ((g < 0.0) == (g_lo < 0.0)) {
            lo = y;
            g_lo = g;
        } else {
            hi = y;
        }
        double next = (dg != 0.0) ? y - g / dg : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        const double step = std::abs(next - y);
        y = next;
        if (step < kStepTolerance || hi - lo < kStepTolerance) {
            ++it;
            break;
        }
    }
    return {SolveStatus::ok, y, it, std::abs(poly.value(y))};
}

} // namespace

YSolution solve_y(const MatchingPolynomial& poly, std::optional<double> previous_y) {
    if (!std::isfinite(poly.target()))
        throw std::invalid_argument("solve_y: non-finite unresolved forcing");
    if (poly.scale() < kDegenerateLevel && std::abs(poly.target()) < kDegenerateLevel)
        return {SolveStatus::degenerate, 0.0, 0, 0.0};
    if (poly.scale() < kDegenerateLevel) return {SolveStatus::no_root, 0.0, 0, 0.0};

    if (previous_y && *previous_y > 0.0 && *previous_y < 1.0) {
        if (auto sol = newton_from(poly, *previous_y)) return *sol;
    }

    // Sign scan over [0, 1] in 64 uniform intervals; endpoints are not roots we accept.
    std::vector<double> grid(kScanIntervals + 1);
    std::vector<double> values(kScanIntervals + 1);
    for (int i = 0; i <= kScanIntervals; ++i) {
        grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / kScanIntervals;
        values[static_cast<std::size_t>(i)] = poly.value(grid[static_cast<std::size_t>(i)]);
    }
    std::vector<std::pair<double, double>> brackets;
    for (int i = 0; i < kScanIntervals; ++i) {
        const double a = values[static_cast<std::size_t>(i)];
        const double b = values[static_cast<std::size_t>(i) + 1];
        if (a == 0.0 && i > 0) {
            brackets.emplace_back(grid[static_cast<std::size_t>(i)], grid[static_cast<std::size_t>(i)]);
        } else if ((a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0)) {
            brackets.emplace_back(grid[static_cast<std::size_t>(i)], grid[static_cast<std::size_t>(i) + 1]);
        }
    }
    if (brackets.empty()) return {SolveStatus::no_root, 0.0, 0, 0.0};

    std::pair<double, double> chosen = brackets.back();
    if (previous_y) {
        auto distance = [&](const std::pair<double, double>& br) {
            if (*previous_y >= br.first && *previous_y <= br.second) return 0.0;
            return std::min(std::abs(*previous_y - br.first), std::abs(*previous_y - br.second));
        };
        chosen = *std::min_element(brackets.begin(), brackets.end(),
                                   [&](const auto& a, const auto& b) { return distance(a) < distance(b); });
    }
    if (chosen.first == chosen.second) return {SolveStatus::ok, chosen.first, 0, 0.0};
    YSolution sol = refine_bracket(poly, chosen.first, chosen.second);
    if (!(sol.y > 0.0 && sol.y < 1.0)) return {SolveStatus::no_root, 0.0, sol.iterations, 0.0};
    return sol;
}

YSolution solve_y(const EstimatorHistory& history, std::optional<double> previous_y) {
    return solve_y(MatchingPolynomial(history), previous_y);
}

double t0_from_y(double y, double dt) {
    if (!(y > 0.0 && y < 1.0)) throw std::invalid_argument("t0_from_y: y must lie in (0, 1)");
    if (!(dt > 0.0)) throw std::invalid_argument("t0_from_y: dt must be positive");
    return -2.0 * dt / std::log(y);
}

double epsilon(double y_prev, double y_curr, int n_t) {
    if (n_t < 1) throw std::invalid_argument("epsilon: need n_t >= 1");
    double p_prev = 1.0;
    double p_curr = 1.0;
    double eps = 0.0;
    for (int l = 1; l <= n_t; ++l) {
        p_prev *= y_prev;
        p_curr *= y_curr;
        eps = std::max(eps, std::abs(p_curr - p_prev));
    }
    return eps;
}

// ---------------------------------------------------------------------------
// Minimum tracking

EpsilonMonitor::EpsilonMonitor(int confirm_window) : confirm_window_(confirm_window) {
    if (confirm_window < 1) throw std::invalid_argument("EpsilonMonitor: confirm window must be >= 1");
}

const EstimateRecord& EpsilonMonitor::minimum() const {
    if (!has_best_) throw std::logic_error("EpsilonMonitor: no minimum yet");
    return best_;
}

bool EpsilonMonitor::update(const EstimateRecord& record) {
    if (confirmed_) return true;
    if (!std::isfinite(record.epsilon)) return false;
    if (!has_best_ || record.epsilon < best_.epsilon) {
        best_ = record;
        has_best_ = true;
        above_ = 0;
        return false;
    }
    ++above_;
    confirmed_ = above_ >= confirm_window_;
    return confirmed_;
}

// ---------------------------------------------------------------------------
// Adaptive algorithm

void AdaptiveConfig::validate() const {
    ReductionSpec{resolved, n_orders, 1.0, n0, true}.validate();
    if (stat_orders < 1 || stat_orders > resolved)
        throw std::invalid_argument("adaptive run: stat order count must satisfy 1 <= lambda_stat <= lambda");
    StepperConfig{dt, t_end, observer_stride}.validate();
    if (estimator.warmup < 1) throw std::invalid_argument("adaptive run: warmup must be >= 1");
    if (estimator.stride < 1) throw std::invalid_argument("adaptive run: estimator stride must be >= 1");
    if (estimator.confirm_window < 1)
        throw std::invalid_argument("adaptive run: confirm window must be >= 1");
}

AdaptiveResult adaptive_run(const AdaptiveConfig& config) {
    config.validate();
    const auto c = triple_product_tensor(config.n_orders);
    const auto d = quad_product_tensor(config.stat_orders);
    const int n_modes = config.n_modes;
    const int n_orders = config.n_orders;
    const long steps = StepperConfig{config.dt, config.t_end, config.observer_stride}.step_count();

    AdaptiveResult result;
    PCField u = build_initial_field(n_modes, n_orders, config.params.alpha0, config.params.alpha1);
    u.zero_nyquist();
    const auto rhs = full_system_rhs(n_modes, n_orders, config.params, c, config.method);

    EstimatorHistory history(config.dt, n_modes, config.resolved, config.estimator.history_cap);
    EpsilonMonitor monitor(config.estimator.confirm_window);

    result.stats.push_back({compute_stats(0.0, u, d, config.stat_orders), false});
    history.record_sample(0.0, u, c, config.method);

    StateVector state(u.data().begin(), u.data().end());
    HeunStepper stepper;
    std::optional<double> last_y;
    PCField state_at_min;
    long step_at_min = -1;
    long step = 0;

    const auto phase1_start = Clock::now();
    for (; step < steps; ++step) {
        const auto step_start = Clock::now();
        stepper.step(state, rhs, static_cast<double>(step) * config.dt, config.dt);
        result.phase1_integration_seconds += seconds_since(step_start);

        const long done = step + 1;
        const double t = static_cast<double>(done) * config.dt;
        const PCField current(n_modes, n_orders, state);
        history.record_sample(t, current, c, config.method);
        if (done % config.observer_stride == 0)
            result.stats.push_back({compute_stats(t, current, d, config.stat_orders), false});

        if (done < config.estimator.warmup || (done - config.estimator.warmup) % config.estimator.stride != 0)
            continue;

        const YSolution sol = solve_y(history, last_y);
        EstimateRecord rec;
        rec.t = t;
        rec.status = sol.status;
        rec.newton_iterations = sol.iterations;
        rec.residual = sol.residual;
        rec.epsilon = std::numeric_limits<double>::quiet_NaN();
        if (sol.status == SolveStatus::ok) {
            rec.y_hat = sol.y;
            rec.t0_hat = t0_from_y(sol.y, config.dt);
            result.report.newton_iterations_max =
                std::max(result.report.newton_iterations_max, sol.iterations);
            if (last_y) rec.epsilon = epsilon(*last_y, sol.y, history.n_t());
            last_y = sol.y;
            monitor.update(rec);
            if (monitor.has_minimum() && monitor.minimum().t == t) {
                state_at_min = current;
                step_at_min = done;
            }
        }
        result.estimates.push_back(rec);
        if (monitor.confirmed()) {
            ++step;
            break;
        }
    }
    result.phase1_steps = step;
    result.phase1_seconds = seconds_since(phase1_start);

    if (monitor.has_minimum()) {
        const auto& best = monitor.minimum();
        result.report.t_min = best.t;
        result.report.t0_hat = best.t0_hat;
        result.report.y_hat = best.y_hat;
        result.report.epsilon_min = best.epsilon;
    }

    if (!monitor.confirmed()) {
        result.final_resolved = project(PCField(n_modes, n_orders, state), config.resolved);
        return result;
    }

    // Phase 2: restart from t_min on the reduced model.
    result.report.switched = true;
    const double t_min = result.report.t_min;
    std::erase_if(result.stats, [&](const TaggedStat& s) { return s.stat.t > t_min + 0.5 * config.dt; });

    ReductionSpec spec{config.resolved, n_orders, result.report.t0_hat, config.n0, true};
    ReducedModel model(spec, config.params, c, n_modes, config.method);
    MemoryState w(n_modes, config.resolved, config.n0);
    w.sub.front() = memory_integral_field(history, result.report.y_hat, static_cast<int>(step_at_min));
    result.switch_state = state_at_min;
    result.switch_memory = w.sub.front();

    StateVector reduced = model.pack(state_at_min, w);
    const auto reduced_rhs = model.as_rhs();
    const auto phase2_start = Clock::now();
    for (long n = step_at_min; n < steps; ++n) {
        stepper.step(reduced, reduced_rhs, static_cast<double>(n) * config.dt, config.dt);
        const long done = n + 1;
        if (done % config.observer_stride == 0) {
            const double t = static_cast<double>(done) * config.dt;
            result.stats.push_back(
                {compute_stats(t, model.unpack_resolved(reduced), d, config.stat_orders), true});
        }
    }
    result.phase2_seconds = seconds_since(phase2_start);
    result.phase2_steps = steps - step_at_min;
    result.final_resolved = model.unpack_resolved(reduced);
    return result;
}

} // namespace mzuq
