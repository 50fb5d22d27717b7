// lfsim: run scenarios, estimate the stable time step, and run the
// validation studies from the command line.

#include "leapfrog/core/log.hpp"
#include "leapfrog/driver/run_scenario.hpp"
#include "leapfrog/driver/studies.hpp"
#include "leapfrog/io/format.hpp"
#include "leapfrog/scenarios/build.hpp"
#include "leapfrog/scenarios/config.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <optional>
#include <string>

using namespace leapfrog;
using leapfrog::io::format_double;

namespace {

struct ScenarioFlags {
    std::string config;
    std::string preset;
    std::string out;
    std::string grid;
    std::optional<double> tau_factor;
    std::optional<double> duration;
    std::string snapshots;
    bool vti = false;
    std::optional<long long> seed;
    bool allow_unstable = false;
    bool verbose = false;

    void attach(CLI::App& app)
    {
        app.add_option("--config", config, "scenario INI file");
        app.add_option("--preset", preset, "named scenario")->check(CLI::IsMember(scenarios::preset_names()));
        app.add_option("--out", out, "output directory");
        app.add_option("--grid", grid, "cells as NXxNY");
        app.add_option("--tau-factor", tau_factor, "time step as a multiple of tau_max");
        app.add_option("--duration", duration, "final time");
        app.add_option("--snapshots", snapshots, "comma-separated snapshot times");
        app.add_flag("--vti", vti, "also write .vti snapshots");
        app.add_option("--seed", seed, "seed for randomised parts");
        app.add_flag("--allow-unstable", allow_unstable, "accept a step above tau_max");
        app.add_flag("-v,--verbose", verbose, "log progress");
    }

    /// Throws ConfigError on any inconsistency.
    scenarios::ScenarioConfig resolve() const
    {
        if (!config.empty() && !preset.empty()) {
            throw ConfigError("--config and --preset are mutually exclusive");
        }
        if (config.empty() && preset.empty()) {
            throw ConfigError("one of --config or --preset is required");
        }
        scenarios::ScenarioConfig c = config.empty() ? scenarios::preset(preset) : scenarios::load_config(config);
        try {
            if (!grid.empty()) {
                const auto x = grid.find_first_of("xX");
                if (x == std::string::npos) {
                    throw std::invalid_argument("--grid: expected NXxNY");
                }
                c.domain.nx = io::parse_integer(std::string_view(grid).substr(0, x), "--grid");
                c.domain.ny = io::parse_integer(std::string_view(grid).substr(x + 1), "--grid");
            }
            if (!snapshots.empty()) {
                c.time.snapshots = io::parse_double_list(snapshots, "--snapshots");
            }
        } catch (const std::invalid_argument& e) {
            throw ConfigError(e.what());
        }
        if (!out.empty()) c.output.directory = out;
        if (tau_factor) {
            c.time.tau = 0;
            c.time.cfl_factor = *tau_factor;
        }
        if (duration) {
            c.time.duration = *duration;
            std::erase_if(c.time.snapshots, [&](double t) { return t > *duration; });
        }
        if (vti) c.output.vti = true;
        if (seed) c.output.seed = *seed;
        if (allow_unstable) c.time.allow_unstable = true;
        c.validate();
        return c;
    }
};

std::string fmt_time(double t) { return std::isnan(t) ? std::string("none") : format_double(t); }

int cmd_run(const ScenarioFlags& f, bool audit_only)
{
    scenarios::ScenarioConfig c;
    try {
        c = f.resolve();
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return driver::exit_config;
    }
    const auto o = driver::run_scenario(c);
    std::cout << "status=" << (o.exit_code == 0 ? "completed" : "failed") << " exit_code=" << o.exit_code
              << " steps=" << o.steps_completed << "/" << o.n_steps << " tau=" << format_double(o.time_step.tau)
              << " tau_max=" << format_double(o.time_step.tau_max) << " a_min=" << format_double(o.a_min) << '\n';
    if (o.rupture.segments > 0) {
        std::cout << "first_rupture_time=" << fmt_time(o.rupture.first_rupture_time)
                  << " segments_ruptured=" << o.rupture.ruptured << " segments_damaged=" << o.rupture.damaged << "/"
                  << o.rupture.segments << '\n';
    }
    std::cout << "max_relative_imbalance=" << format_double(o.max_relative_imbalance)
              << " dissipation_monotone=" << (o.dissipation_monotone ? "true" : "false")
              << " wall_seconds=" << format_double(std::round(o.wall_seconds * 100) / 100) << '\n';
    if (o.exit_code != 0) {
        std::cerr << o.message << '\n';
        if (o.failed_step) {
            std::cerr << "failed at step " << *o.failed_step << '\n';
        }
        return o.exit_code;
    }
    if (audit_only) {
        const bool ok = o.max_relative_imbalance <= 1e-8 && o.dissipation_monotone;
        std::cout << "audit=" << (ok ? "pass" : "fail") << '\n';
        return ok ? driver::exit_ok : driver::exit_failure;
    }
    return driver::exit_ok;
}

int cmd_cfl(const ScenarioFlags& f)
{
    try {
        const auto c = f.resolve();
        auto cc = c;
        cc.time.allow_unstable = true;
        const auto built = scenarios::build_scenario(cc);
        const auto ts = scenarios::resolve_time_step(built);
        std::cout << "tau_max=" << format_double(ts.tau_max) << " eta=" << format_double(c.time.eta)
                  << " ratio_to_config=" << format_double(ts.ratio) << '\n';
        // a >= 1 - tau^2 lambda_max / 4 for every proto-stress.
        std::cout << "lambda_max=" << format_double(ts.lambda_max) << " tau=" << format_double(ts.tau)
                  << " a_min_bound=" << format_double(1 - ts.tau * ts.tau * ts.lambda_max / 4)
                  << " iterations=" << ts.iterations << '\n';
        return driver::exit_ok;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return driver::exit_config;
    } catch (const EstimationError& e) {
        std::cerr << e.what() << '\n';
        return driver::exit_estimation;
    }
}

int cmd_converge(int levels, long long base, double duration)
{
    try {
        const auto r = driver::run_convergence(scenarios::convergence_study(levels, base, duration));
        for (std::size_t l = 0; l < r.cells.size(); ++l) {
            std::cout << "level=" << l << " cells=" << r.cells[l] << " tau=" << format_double(r.tau[l])
                      << " steps=" << r.steps[l];
            if (l < r.differences.size()) {
                std::cout << " diff_to_next=" << format_double(r.differences[l])
                          << " error_to_finest=" << format_double(r.errors[l]);
            }
            std::cout << '\n';
        }
        const bool ok = r.order >= 1.7 && r.order <= 2.2;
        std::cout << "order=" << format_double(r.order) << " result=" << (ok ? "pass" : "fail") << '\n';
        return ok ? driver::exit_ok : driver::exit_failure;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return driver::exit_config;
    } catch (const BlowUpError& e) {
        std::cerr << e.what() << '\n';
        return driver::exit_blow_up;
    }
}

int cmd_relax(double tau, double duration, double viscosity, double yield)
{
    try {
        const MaterialParams<double> m{1.66, 1.0, 1.0};
        const ViscoplasticParams<double> p{yield, viscosity, 0.0};
        p.validate();
        const auto r = driver::maxwell_relaxation(m, p, 0.01, duration, tau);
        const bool ok = r.order >= 1.7 && r.order <= 2.3;
        std::cout << "tau=" << format_double(r.tau) << " stress=" << format_double(r.final_stress)
                  << " analytic=" << format_double(r.analytic) << " error=" << format_double(r.error_coarse)
                  << " error_half=" << format_double(r.error_fine) << '\n';
        std::cout << "order=" << format_double(r.order) << " result=" << (ok ? "pass" : "fail") << '\n';
        return ok ? driver::exit_ok : driver::exit_failure;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return driver::exit_config;
    }
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Explicit staggered elastodynamics with internal variables"};
    app.require_subcommand(1);

    ScenarioFlags run_flags, cfl_flags, audit_flags;
    auto* run = app.add_subcommand("run", "run a scenario and write its outputs");
    run_flags.attach(*run);
    auto* cfl = app.add_subcommand("cfl", "estimate tau_max for a scenario");
    cfl_flags.attach(*cfl);
    auto* audit = app.add_subcommand("audit", "run a scenario and check its energy balance");
    audit_flags.attach(*audit);

    int levels = 3;
    long long base = 64;
    double conv_duration = 1.5;
    auto* converge = app.add_subcommand("converge", "refinement study on a smooth pulse");
    converge->add_option("--levels", levels, "number of grids (>= 3)");
    converge->add_option("--base", base, "cells per side on the coarsest grid");
    converge->add_option("--duration", conv_duration, "final time");

    double relax_tau = 0.1, relax_duration = 1.0, relax_viscosity = 1.0, relax_yield = 0.0;
    auto* relax = app.add_subcommand("relax", "single-node Maxwell relaxation");
    relax->add_option("--tau", relax_tau, "coarse time step");
    relax->add_option("--duration", relax_duration, "final time (multiple of tau)");
    relax->add_option("--viscosity", relax_viscosity, "viscosity D");
    relax->add_option("--yield-stress", relax_yield, "yield stress");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : driver::exit_config;
    }

    for (const auto* f : {&run_flags, &cfl_flags, &audit_flags}) {
        if (f->verbose) {
            log::set_level(log::Level::info);
        }
    }
    if (run->parsed()) return cmd_run(run_flags, false);
    if (audit->parsed()) return cmd_run(audit_flags, true);
    if (cfl->parsed()) return cmd_cfl(cfl_flags);
    if (converge->parsed()) return cmd_converge(levels, base, conv_duration);
    if (relax->parsed()) return cmd_relax(relax_tau, relax_duration, relax_viscosity, relax_yield);
    return driver::exit_failure;
}
