#pragma once

#include "mzuq/memory_estimator.hpp"
#include "mzuq/mc_oracle.hpp"
#include "mzuq/spectral_burgers.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mzuq {

enum class RunMode { full, markovian, memory, adaptive, mc };

std::string to_string(RunMode mode);
std::optional<RunMode> parse_run_mode(std::string_view text);

/// Bad configuration: unknown key, malformed value, or a violated invariant.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    double nu = 0.03;
    int n_modes = 196;
    int n_pc = 7;
    int lambda = 2;
    double dt = 1e-3;
    double t_end = 3.0;
    RunMode mode = RunMode::full;
    std::optional<double> t0;
    int n0 = 1;
    int lambda_stat = 2;
    double alpha0 = 1.0;
    double alpha1 = 1.0;
    int observer_stride = 10;
    ConvolutionMethod convolution = ConvolutionMethod::direct;
    EstimatorControls estimator;
    int samples = 2000;
    std::uint64_t seed = 20130101;
    bool antithetic = false;
    std::string out = "mzuq";

    /// Throws ConfigError naming the violated invariant.
    void validate() const;

    AdaptiveConfig adaptive_config() const;
    McConfig mc_config() const;

    /// `key = value` lines for every setting, in a fixed order.
    std::vector<std::pair<std::string, std::string>> entries() const;
};

using Overrides = std::vector<std::pair<std::string, std::string>>;

/// Parses `key = value` lines (`#` starts a comment), then applies the
/// overrides in order. `mode` must be given by one of the two. Errors carry the
/// key and the line number (or "command line").
RunConfig parse_config_text(std::string_view text, const Overrides& overrides = {});
RunConfig parse_config(const std::filesystem::path& file, const Overrides& overrides = {});

/// Known configuration keys, in manifest order.
const std::vector<std::string>& config_keys();

} // namespace mzuq
