#pragma once

#include "mzuq/memory_estimator.hpp"
#include "mzuq/mc_oracle.hpp"
#include "mzuq/run_config.hpp"

#include <iosfwd>
#include <optional>
#include <vector>

namespace mzuq {

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitNumeric = 2 };

/// Everything a run produces before it is written out.
struct RunOutputs {
    std::vector<TaggedStat> stats;          // every mode but mc
    std::vector<EstimateRecord> estimates;  // adaptive only
    std::optional<SwitchReport> report;     // adaptive only
    std::vector<McStat> mc;                 // mc only
    double wall_seconds = 0.0;
    double full_seconds_per_step = 0.0;     // 0 when the mode never ran the full system
    double reduced_seconds_per_step = 0.0;  // 0 when the mode never ran a reduced model
};

/// Executes the configured pipeline in memory. Throws IntegrationError or
/// HistoryCapExceeded on numeric failure.
RunOutputs simulate(const RunConfig& config);

// Fixed CSV schemas, header row first, 15 significant digits.
//   stats:     t,mean_energy,std_energy,mean_gradient,std_gradient,mode_active
//   estimator: t,y_hat,t0_hat,epsilon,newton_iters,status
//   mc:        t,stat,value,stderr
void write_stats_csv(std::ostream& os, const std::vector<TaggedStat>& stats);
void write_estimator_csv(std::ostream& os, const std::vector<EstimateRecord>& estimates);
void write_mc_csv(std::ostream& os, const std::vector<McStat>& stats);
void write_manifest(std::ostream& os, const RunConfig& config, const RunOutputs& outputs);

/// Runs and writes `<out>_stats.csv` (or `<out>_mc.csv` for mc),
/// `<out>_estimator.csv` in adaptive mode, and `<out>_manifest`.
/// Returns an ExitCode; messages go to `log`.
int run(const RunConfig& config, std::ostream& log);

} // namespace mzuq
