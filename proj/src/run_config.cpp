#include "mzuq/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <sstream>

namespace mzuq {

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(first, last - first + 1));
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

struct Where {
    std::string key;
    std::string origin; // "line 7" or "command line"
};

[[noreturn]] void fail(const Where& where, const std::string& what) {
    throw ConfigError("config key '" + where.key + "' (" + where.origin + "): " + what);
}

double to_double(const std::string& text, const Where& where) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        fail(where, "expected a real number, got '" + text + "'");
    }
}

long long to_integer(const std::string& text, const Where& where) {
    long long v = 0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) fail(where, "expected an integer, got '" + text + "'");
    return v;
}

int to_int(const std::string& text, const Where& where) {
    const long long v = to_integer(text, where);
    if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
        fail(where, "integer out of range");
    return static_cast<int>(v);
}

bool to_bool(const std::string& text, const Where& where) {
    std::string lower = text;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    if (lower == "true" || lower == "1" || lower == "yes" || lower == "on") return true;
    if (lower == "false" || lower == "0" || lower == "no" || lower == "off") return false;
    fail(where, "expected a boolean, got '" + text + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const Where&)>;

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table = {
        {"nu", [](RunConfig& c, const std::string& v, const Where& w) { c.nu = to_double(v, w); }},
        {"n_modes", [](RunConfig& c, const std::string& v, const Where& w) { c.n_modes = to_int(v, w); }},
        {"n_pc", [](RunConfig& c, const std::string& v, const Where& w) { c.n_pc = to_int(v, w); }},
        {"lambda", [](RunConfig& c, const std::string& v, const Where& w) { c.lambda = to_int(v, w); }},
        {"dt", [](RunConfig& c, const std::string& v, const Where& w) { c.dt = to_double(v, w); }},
        {"t_end", [](RunConfig& c, const std::string& v, const Where& w) { c.t_end = to_double(v, w); }},
        {"mode",
         [](RunConfig& c, const std::string& v, const Where& w) {
             const auto mode = parse_run_mode(v);
             if (!mode) fail(w, "unknown mode '" + v + "' (full, markovian, memory, adaptive, mc)");
             c.mode = *mode;
         }},
        {"t0", [](RunConfig& c, const std::string& v, const Where& w) { c.t0 = to_double(v, w); }},
        {"n0", [](RunConfig& c, const std::string& v, const Where& w) { c.n0 = to_int(v, w); }},
        {"lambda_stat",
         [](RunConfig& c, const std::string& v, const Where& w) { c.lambda_stat = to_int(v, w); }},
        {"alpha0", [](RunConfig& c, const std::string& v, const Where& w) { c.alpha0 = to_double(v, w); }},
        {"alpha1", [](RunConfig& c, const std::string& v, const Where& w) { c.alpha1 = to_double(v, w); }},
        {"observer_stride",
         [](RunConfig& c, const std::string& v, const Where& w) { c.observer_stride = to_int(v, w); }},
        {"convolution",
         [](RunConfig& c, const std::string& v, const Where& w) {
             if (v == "direct")
                 c.convolution = ConvolutionMethod::direct;
             else if (v == "transform")
                 c.convolution = ConvolutionMethod::transform;
             else
                 fail(w, "expected 'direct' or 'transform', got '" + v + "'");
         }},
        {"warmup",
         [](RunConfig& c, const std::string& v, const Where& w) { c.estimator.warmup = to_int(v, w); }},
        {"confirm_window",
         [](RunConfig& c, const std::string& v, const Where& w) {
             c.estimator.confirm_window = to_int(v, w);
         }},
        {"estimator_stride",
         [](RunConfig& c, const std::string& v, const Where& w) { c.estimator.stride = to_int(v, w); }},
        {"history_cap",
         [](RunConfig& c, const std::string& v, const Where& w) {
             const long long cap = to_integer(v, w);
             if (cap < 0) fail(w, "history cap must be >= 0");
             c.estimator.history_cap = static_cast<std::size_t>(cap);
         }},
        {"samples", [](RunConfig& c, const std::string& v, const Where& w) { c.samples = to_int(v, w); }},
        {"seed",
         [](RunConfig& c, const std::string& v, const Where& w) {
             const long long s = to_integer(v, w);
             if (s < 0) fail(w, "seed must be non-negative");
             c.seed = static_cast<std::uint64_t>(s);
         }},
        {"antithetic", [](RunConfig& c, const std::string& v, const Where& w) { c.antithetic = to_bool(v, w); }},
        {"out",
         [](RunConfig& c, const std::string& v, const Where& w) {
             if (v.empty()) fail(w, "output prefix must not be empty");
             c.out = v;
         }},
    };
    return table;
}

void apply(RunConfig& config, const std::string& key, const std::string& value, const Where& where) {
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) fail(where, "unknown key");
    it->second(config, value, where);
}

} // namespace

std::string to_string(RunMode mode) {
    switch (mode) {
    case RunMode::full: return "full";
    case RunMode::markovian: return "markovian";
    case RunMode::memory: return "memory";
    case RunMode::adaptive: return "adaptive";
    case RunMode::mc: return "mc";
    }
    return "unknown";
}

std::optional<RunMode> parse_run_mode(std::string_view text) {
    for (RunMode m : {RunMode::full, RunMode::markovian, RunMode::memory, RunMode::adaptive, RunMode::mc})
        if (text == to_string(m)) return m;
    return std::nullopt;
}

void RunConfig::validate() const {
    auto bad = [](const std::string& what) { throw ConfigError("invalid configuration: " + what); };
    if (!(nu >= 0.0)) bad("nu must be >= 0");
    if (n_modes < 4 || n_modes % 2 != 0) bad("n_modes must be even and >= 4");
    if (n_pc < 2) bad("n_pc must be >= 2");
    if (n_pc > kMaxLegendreOrder + 1) bad("n_pc exceeds the supported Legendre order");
    if (lambda < 1 || lambda > n_pc) bad("lambda must satisfy 1 <= lambda <= n_pc");
    if (!(dt > 0.0)) bad("dt must be > 0");
    if (!(t_end >= dt)) bad("t_end must be >= dt");
    if (observer_stride < 1) bad("observer_stride must be >= 1");
    if (n0 < 1) bad("n0 must be >= 1");
    if (lambda_stat < 1 || lambda_stat > n_pc) bad("lambda_stat must satisfy 1 <= lambda_stat <= n_pc");
    const bool reduced = mode == RunMode::markovian || mode == RunMode::memory || mode == RunMode::adaptive;
    if (reduced && lambda_stat > lambda) bad("lambda_stat must be <= lambda for reduced-model modes");
    if (mode == RunMode::memory) {
        if (!t0) bad("mode=memory requires t0");
        if (!(*t0 > 0.0)) bad("t0 must be > 0");
        if (lambda >= n_pc) bad("mode=memory requires lambda < n_pc");
    }
    if (mode == RunMode::adaptive && lambda >= n_pc) bad("mode=adaptive requires lambda < n_pc");
    if (estimator.warmup < 1) bad("warmup must be >= 1");
    if (estimator.confirm_window < 1) bad("confirm_window must be >= 1");
    if (estimator.stride < 1) bad("estimator_stride must be >= 1");
    if (mode == RunMode::mc && samples < 2) bad("samples must be >= 2");
}

AdaptiveConfig RunConfig::adaptive_config() const {
    AdaptiveConfig a;
    a.n_modes = n_modes;
    a.n_orders = n_pc;
    a.resolved = lambda;
    a.n0 = n0;
    a.stat_orders = lambda_stat;
    a.dt = dt;
    a.t_end = t_end;
    a.observer_stride = observer_stride;
    a.params = BurgersParams{nu, alpha0, alpha1};
    a.estimator = estimator;
    a.method = convolution;
    return a;
}

McConfig RunConfig::mc_config() const {
    McConfig m;
    m.n_samples = samples;
    m.seed = seed;
    m.n_modes = n_modes;
    m.nu = nu;
    m.dt = dt;
    m.t_end = t_end;
    m.alpha0 = alpha0;
    m.alpha1 = alpha1;
    m.antithetic = antithetic;
    m.method = convolution;
    return m;
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
    return {
        {"mode", to_string(mode)},
        {"nu", format_double(nu)},
        {"n_modes", std::to_string(n_modes)},
        {"n_pc", std::to_string(n_pc)},
        {"lambda", std::to_string(lambda)},
        {"dt", format_double(dt)},
        {"t_end", format_double(t_end)},
        {"t0", t0 ? format_double(*t0) : std::string("unset")},
        {"n0", std::to_string(n0)},
        {"lambda_stat", std::to_string(lambda_stat)},
        {"alpha0", format_double(alpha0)},
        {"alpha1", format_double(alpha1)},
        {"observer_stride", std::to_string(observer_stride)},
        {"convolution", convolution == ConvolutionMethod::direct ? "direct" : "transform"},
        {"warmup", std::to_string(estimator.warmup)},
        {"confirm_window", std::to_string(estimator.confirm_window)},
        {"estimator_stride", std::to_string(estimator.stride)},
        {"history_cap", std::to_string(estimator.history_cap)},
        {"samples", std::to_string(samples)},
        {"seed", std::to_string(seed)},
        {"antithetic", antithetic ? "true" : "false"},
        {"out", out},
    };
}

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [key, value] : RunConfig{}.entries()) k.push_back(key);
        return k;
    }();
    return keys;
}

RunConfig parse_config_text(std::string_view text, const Overrides& overrides) {
    RunConfig config;
    bool have_mode = false;

    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(std::string_view(raw).substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const Where where{trim(std::string_view(line).substr(0, eq)), "line " + std::to_string(line_no)};
        if (eq == std::string::npos) fail(where, "expected 'key = value'");
        if (where.key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": missing key before '='");
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (value.empty()) fail(where, "missing value");
        apply(config, where.key, value, where);
        have_mode = have_mode || where.key == "mode";
    }
    for (const auto& [key, value] : overrides) {
        apply(config, key, trim(value), Where{key, "command line"});
        have_mode = have_mode || key == "mode";
    }
    if (!have_mode) throw ConfigError("missing required key 'mode'");
    config.validate();
    return config;
}

RunConfig parse_config(const std::filesystem::path& file, const Overrides& overrides) {
    std::ifstream in(file);
    if (!in) throw ConfigError("cannot open config file '" + file.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), overrides);
}

} // namespace mzuq
