#pragma once

#include <string>
#include <utility>
#include <vector>

namespace leapfrog::scenarios {

enum class ProcessKind { null, viscoplastic, adhesive };
enum class LoadKind {
    none,             ///< no loads, no initial motion
    ramp_normal,      ///< traction normal to `side`, amplitude * t / ramp_time
    ramp_tangential,  ///< traction tangential to `side` (counter-clockwise)
    pulse,            ///< Gaussian initial velocity pulse, no loads
    translation,      ///< uniform initial velocity, no loads
};

struct DomainConfig {
    double lx = 10;
    double ly = 10;
    long long nx = 400;
    long long ny = 400;

    friend bool operator==(const DomainConfig&, const DomainConfig&) = default;
};

struct MaterialConfig {
    double bulk_modulus = 1.66;
    double shear_modulus = 1;
    double density = 1;

    friend bool operator==(const MaterialConfig&, const MaterialConfig&) = default;
};

struct ProcessConfig {
    ProcessKind kind = ProcessKind::null;
    // viscoplastic
    double yield_stress = 0;
    double viscosity = 1;
    double hardening = 0;
    // adhesive
    double toughness = 2.57e-5;
    double eps1 = 0;
    bool healing = false;
    std::string toughness_sign = "threshold";  ///< threshold | literal
    double stiffness_xx = 0.5;
    double stiffness_xy = 0;
    double stiffness_yy = 0.5;
    double band_start = 0.45;  ///< fraction of the bottom side
    double band_end = 0.55;

    friend bool operator==(const ProcessConfig&, const ProcessConfig&) = default;
};

struct LoadingConfig {
    LoadKind kind = LoadKind::none;
    std::string side = "top";
    double amplitude = 0;
    double ramp_time = 51;
    // pulse / translation
    double center_x = 5;
    double center_y = 5;
    double width = 0.6;
    double velocity_x = 0;
    double velocity_y = 0;

    friend bool operator==(const LoadingConfig&, const LoadingConfig&) = default;
};

struct TimeConfig {
    double duration = 51;
    double tau = 0;  ///< explicit step; 0 means cfl_factor * tau_max
    double cfl_factor = 0.9;
    double eta = 0.1;
    bool allow_unstable = false;
    std::vector<double> snapshots;

    friend bool operator==(const TimeConfig&, const TimeConfig&) = default;
};

struct OutputConfig {
    std::string directory = "out";
    bool csv = true;
    bool vti = false;
    long long alpha_stride = 1;
    long long seed = 0;

    friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

/// Everything needed to set up and run one experiment.
struct ScenarioConfig {
    std::string name = "custom";
    DomainConfig domain;
    MaterialConfig material;
    ProcessConfig process;
    LoadingConfig loading;
    TimeConfig time;
    OutputConfig output;

    friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;

    double h() const { return domain.lx / static_cast<double>(domain.nx); }
    /// Throws ConfigError on inconsistent or out-of-range values.
    void validate() const;
};

const char* to_string(ProcessKind k);
const char* to_string(LoadKind k);

/// INI text with sections [scenario] [domain] [material] [process] [loading]
/// [time] [output]. Unknown sections or keys are errors.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);
std::string serialize_config(const ScenarioConfig& c);
/// Every field as ("section.key", value) in file order.
std::vector<std::pair<std::string, std::string>> flatten_config(const ScenarioConfig& c);

/// Mode-I delamination of a square glued along the middle of its bottom side,
/// pulled on top; `desk` selects the 100x100 variant with a CFL-derived step.
ScenarioConfig mode_I(bool desk = false);
/// As mode_I but loaded tangentially.
ScenarioConfig mode_II(bool desk = false);
/// Null-process smooth pulse on (0,10)^2.
ScenarioConfig pulse(long long n, double duration);
/// Named preset: mode_I, mode_I_desk, mode_II, mode_II_desk, pulse, quiescent.
ScenarioConfig preset(const std::string& name);
std::vector<std::string> preset_names();

/// Null-process pulse runs at n, 2n, 4n, ... cells per side with tau halving
/// alongside h. Requires levels >= 3.
std::vector<ScenarioConfig> convergence_study(int levels, long long base_cells = 64, double duration = 1.5);

}  // namespace leapfrog::scenarios
