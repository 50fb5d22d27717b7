#pragma once

#include "leapfrog/core/integrator.hpp"
#include "leapfrog/scenarios/build.hpp"
#include "leapfrog/scenarios/config.hpp"

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace leapfrog::driver {

/// Process exit codes of `lfsim`.
enum ExitCode : int {
    exit_ok = 0,
    exit_failure = 1,
    exit_config = 2,
    exit_blow_up = 3,
    exit_estimation = 4,
};

struct RunOptions {
    /// Write energy.csv, snapshots, alpha.csv and manifest.txt under output.directory.
    bool write_files = true;
    /// Also called at every snapshot step, whether or not files are written.
    std::function<void(const scenarios::BuiltScenario&, const StaggeredState<double>&)> on_snapshot;
};

struct RuptureSummary {
    long long segments = 0;
    long long ruptured = 0;  ///< alpha == 0 at the end
    long long damaged = 0;   ///< alpha < 1 at the end
    double first_rupture_time = std::numeric_limits<double>::quiet_NaN();
    long long first_rupture_segment = -1;  ///< side index
    double first_damage_time = std::numeric_limits<double>::quiet_NaN();
    double all_damaged_time = std::numeric_limits<double>::quiet_NaN();
};

struct RunOutcome {
    int exit_code = exit_ok;
    std::string message;
    scenarios::TimeStep time_step;
    std::int64_t n_steps = 0;
    std::int64_t steps_completed = 0;
    std::optional<std::int64_t> failed_step;
    double a_min = std::numeric_limits<double>::quiet_NaN();
    /// max |imbalance| / |twisted kinetic + stored| over steps with nonzero energy.
    double max_relative_imbalance = 0;
    bool dissipation_monotone = true;
    RuptureSummary rupture;
    std::vector<EnergyLedger<double>> ledger;
    RunBounds<double> bounds;
    double wall_seconds = 0;
};

/// Build, pick the time step, run and (optionally) write all outputs. Errors
/// are reported through the exit code and message rather than thrown.
RunOutcome run_scenario(const scenarios::ScenarioConfig& config, const RunOptions& options = {});

/// Relative imbalance metric used by the audit.
double relative_imbalance(const EnergyLedger<double>& row);

}  // namespace leapfrog::driver
