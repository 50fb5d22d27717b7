#pragma once

#include "leapfrog/core/integrator.hpp"
#include "leapfrog/core/load_program.hpp"
#include "leapfrog/elastic2d/boundary.hpp"
#include "leapfrog/elastic2d/elastic_ops.hpp"
#include "leapfrog/processes/adhesive.hpp"
#include "leapfrog/processes/null_process.hpp"
#include "leapfrog/processes/viscoplastic.hpp"
#include "leapfrog/scenarios/config.hpp"

#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

namespace leapfrog::scenarios {

using Ops = Elastic2D<double>;
using Process = std::variant<NullProcess<Ops>, ViscoplasticProcess<double>, AdhesiveProcess<double>>;

/// A config compiled into operators, process, loads and initial state. The
/// process refers to *ops, which is why both live behind pointers.
struct BuiltScenario {
    ScenarioConfig config;
    std::unique_ptr<Ops> ops;
    std::unique_ptr<Process> process;
    LoadProgram<double> program;
    StaggeredState<double> initial;
};

/// Bottom-side segments covered by [band_start, band_end] of the side length.
std::vector<SegmentRef> adhesive_band(const ScenarioConfig& c);

BuiltScenario build_scenario(const ScenarioConfig& c);

struct TimeStep {
    double tau = 0;
    double tau_max = 0;
    double lambda_max = 0;
    int iterations = 0;
    double ratio = 0;  ///< tau / tau_max
};

/// Estimate tau_max and pick the step from the config. Throws ConfigError for
/// a step above tau_max unless allow_unstable is set, EstimationError if the
/// estimate does not converge.
TimeStep resolve_time_step(const BuiltScenario& s);

std::int64_t step_count(double duration, double tau);
/// First step index k with k tau >= t for each snapshot time.
std::vector<std::int64_t> snapshot_steps(const std::vector<double>& times, double tau);

}  // namespace leapfrog::scenarios
