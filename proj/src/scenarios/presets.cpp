#include "leapfrog/core/errors.hpp"
#include "leapfrog/scenarios/config.hpp"

#include <cmath>

namespace leapfrog::scenarios {

ScenarioConfig mode_I(bool desk)
{
    ScenarioConfig c;
    c.name = desk ? "mode_I_desk" : "mode_I";
    c.domain = {10, 10, 400, 400};
    c.process.kind = ProcessKind::adhesive;
    c.process.toughness = 2.57e-5;
    c.process.eps1 = 0;
    c.loading.kind = LoadKind::ramp_normal;
    c.loading.side = "top";
    c.loading.amplitude = 0.005;
    c.loading.ramp_time = 51;
    c.time.duration = 51;
    c.time.snapshots = {20.2073, 21.6506, 23.094, 23.8197, 24.630};
    c.output.directory = c.name;
    if (desk) {
        c.domain.nx = c.domain.ny = 100;
        c.time.tau = 0;
        c.time.cfl_factor = 0.9;
    } else {
        // Slightly above tau_max at eta = 0.1 but below the sharp bound.
        c.time.tau = 0.0144;
        c.time.allow_unstable = true;
    }
    return c;
}

ScenarioConfig mode_II(bool desk)
{
    ScenarioConfig c = mode_I(desk);
    c.name = desk ? "mode_II_desk" : "mode_II";
    c.output.directory = c.name;
    c.loading.kind = LoadKind::ramp_tangential;
    return c;
}

ScenarioConfig pulse(long long n, double duration)
{
    ScenarioConfig c;
    c.name = "pulse";
    c.domain = {10, 10, n, n};
    c.loading.kind = LoadKind::pulse;
    c.loading.center_x = 5;
    c.loading.center_y = 5;
    c.loading.width = 1;
    c.loading.velocity_x = 1;
    c.loading.velocity_y = 0.5;
    c.time.duration = duration;
    c.time.cfl_factor = 0.5;
    c.output.directory = "pulse";
    return c;
}

ScenarioConfig preset(const std::string& name)
{
    if (name == "mode_I") return mode_I(false);
    if (name == "mode_I_desk") return mode_I(true);
    if (name == "mode_II") return mode_II(false);
    if (name == "mode_II_desk") return mode_II(true);
    if (name == "pulse") return pulse(100, 2);
    if (name == "quiescent") {
        ScenarioConfig c;
        c.name = "quiescent";
        c.domain = {10, 10, 32, 32};
        c.time.duration = 5;
        c.output.directory = "quiescent";
        return c;
    }
    throw ConfigError("unknown preset '" + name + "'");
}

std::vector<std::string> preset_names()
{
    return {"mode_I", "mode_I_desk", "mode_II", "mode_II_desk", "pulse", "quiescent"};
}

std::vector<ScenarioConfig> convergence_study(int levels, long long base_cells, double duration)
{
    if (levels < 3) {
        throw ConfigError("convergence study needs at least 3 levels");
    }
    if (base_cells < 2 || !(duration > 0)) {
        throw ConfigError("convergence study needs base_cells >= 2 and a positive duration");
    }
    ScenarioConfig base = pulse(base_cells, duration);
    const double vp = std::sqrt((base.material.bulk_modulus + 4 * base.material.shear_modulus / 3) /
                                base.material.density);
    // Half the interior bound h / vp, rounded so the levels land on the same final time.
    const double h0 = base.domain.lx / static_cast<double>(base_cells);
    const double steps0 = std::ceil(duration / (0.5 * h0 / vp));
    const double tau0 = duration / steps0;

    std::vector<ScenarioConfig> out;
    for (int l = 0; l < levels; ++l) {
        ScenarioConfig c = base;
        const long long n = base_cells << l;
        c.name = "converge_" + std::to_string(n);
        c.domain.nx = c.domain.ny = n;
        c.time.tau = std::ldexp(tau0, -l);
        c.output.csv = false;
        c.output.directory = c.name;
        out.push_back(c);
    }
    return out;
}

}  // namespace leapfrog::scenarios
