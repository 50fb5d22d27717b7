#include "leapfrog/driver/run_scenario.hpp"

#include "leapfrog/io/csv.hpp"
#include "leapfrog/io/format.hpp"
#include "leapfrog/io/manifest.hpp"
#include "leapfrog/io/vti.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>

namespace leapfrog::driver {

namespace fs = std::filesystem;
using scenarios::BuiltScenario;
using scenarios::Ops;
using scenarios::ScenarioConfig;

namespace {

std::ofstream open_out(const fs::path& p)
{
    std::ofstream out(p);
    if (!out) {
        throw std::runtime_error("cannot write '" + p.string() + "'");
    }
    return out;
}

void write_manifest_file(const ScenarioConfig& c, const RunOutcome& o, const std::string& status)
{
    io::Manifest m;
    m.set("status", status);
    m.set("exit_code", static_cast<long long>(o.exit_code));
    if (!o.message.empty()) {
        m.set("message", o.message);
    }
    for (const auto& [k, v] : scenarios::flatten_config(c)) {
        m.set(k, v);
    }
    m.set("tau", o.time_step.tau);
    m.set("tau_max", o.time_step.tau_max);
    m.set("lambda_max", o.time_step.lambda_max);
    m.set("cfl_iterations", static_cast<long long>(o.time_step.iterations));
    m.set("tau_ratio", o.time_step.ratio);
    m.set("n_steps", static_cast<long long>(o.n_steps));
    m.set("steps_completed", static_cast<long long>(o.steps_completed));
    m.set("failed_step", o.failed_step ? std::to_string(*o.failed_step) : std::string("none"));
    m.set("a_min", o.a_min);
    m.set("max_relative_imbalance", o.max_relative_imbalance);
    m.set("dissipation_monotone", std::string(o.dissipation_monotone ? "true" : "false"));
    m.set("sup_v", o.bounds.sup_v);
    m.set("sup_sigma", o.bounds.sup_sigma);
    m.set("sup_z", o.bounds.sup_z);
    if (o.rupture.segments > 0) {
        m.set("segments", o.rupture.segments);
        m.set("segments_ruptured", o.rupture.ruptured);
        m.set("segments_damaged", o.rupture.damaged);
        m.set("first_rupture_time", o.rupture.first_rupture_time);
        m.set("first_rupture_segment", o.rupture.first_rupture_segment);
        m.set("first_damage_time", o.rupture.first_damage_time);
        m.set("all_damaged_time", o.rupture.all_damaged_time);
    }
    const fs::path dir(c.output.directory);
    fs::create_directories(dir);
    auto out = open_out(dir / "manifest.txt");
    io::write_manifest(out, m);
}

}  // namespace

double relative_imbalance(const EnergyLedger<double>& row)
{
    const double e = std::abs(row.total());
    if (row.imbalance == 0) {
        return 0;
    }
    return e > 0 ? std::abs(row.imbalance) / e : std::numeric_limits<double>::infinity();
}

RunOutcome run_scenario(const ScenarioConfig& config, const RunOptions& options)
{
    const auto start = std::chrono::steady_clock::now();
    RunOutcome o;
    auto finish = [&](int code, std::string message, const std::string& status) {
        o.exit_code = code;
        o.message = std::move(message);
        o.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (options.write_files) {
            write_manifest_file(config, o, status);
        }
        return o;
    };

    BuiltScenario s;
    try {
        s = scenarios::build_scenario(config);
        o.time_step = scenarios::resolve_time_step(s);
    } catch (const ConfigError& e) {
        return finish(exit_config, e.what(), "config_error");
    } catch (const EstimationError& e) {
        return finish(exit_estimation, e.what(), "estimation_error");
    }

    const double tau = o.time_step.tau;
    o.n_steps = scenarios::step_count(config.time.duration, tau);
    // The last step may end just past the duration; the loads extend to it.
    s.program.horizon = std::max(config.time.duration, static_cast<double>(o.n_steps) * tau);
    const Ops& ops = *s.ops;
    const bool adhesive = std::holds_alternative<AdhesiveProcess<double>>(*s.process);
    const fs::path dir(config.output.directory);

    std::ofstream energy_out;
    std::ofstream alpha_out;
    if (options.write_files) {
        fs::create_directories(dir);
        if (config.output.csv) {
            energy_out = open_out(dir / "energy.csv");
            io::write_energy_header(energy_out);
            if (adhesive) {
                alpha_out = open_out(dir / "alpha.csv");
                io::write_alpha_header(alpha_out);
            }
        }
    }

    RuptureSummary& rup = o.rupture;
    rup.segments = adhesive ? ops.segment_count() : 0;
    auto track = [&](const StaggeredState<double>& st) {
        if (!adhesive) {
            return;
        }
        if (alpha_out.is_open() && st.k % config.output.alpha_stride == 0) {
            io::write_alpha_rows(alpha_out, io::alpha_rows(ops, st.sigma, st.z, st.t));
        }
        long long damaged = 0;
        for (Index i = 0; i < st.z.size(); ++i) {
            if (st.z[i] <= 0 && std::isnan(rup.first_rupture_time)) {
                rup.first_rupture_time = st.t;
                rup.first_rupture_segment = ops.boundary().adhesive[static_cast<std::size_t>(i)].index;
            }
            damaged += st.z[i] < 1;
        }
        if (damaged > 0 && std::isnan(rup.first_damage_time)) {
            rup.first_damage_time = st.t;
        }
        if (damaged == rup.segments && std::isnan(rup.all_damaged_time)) {
            rup.all_damaged_time = st.t;
        }
    };

    RunMonitors<double> mon;
    mon.snapshot_steps = scenarios::snapshot_steps(config.time.snapshots, tau);
    mon.on_snapshot = [&](const StaggeredState<double>& st) {
        if (options.on_snapshot) {
            options.on_snapshot(s, st);
        }
        if (!options.write_files) {
            return;
        }
        const io::SnapshotTable table = io::make_snapshot(ops, st.v);
        const std::string stem = "snapshot_" + std::to_string(st.k);
        if (config.output.csv) {
            auto out = open_out(dir / (stem + ".csv"));
            io::write_snapshot_csv(out, table);
        }
        if (config.output.vti) {
            auto out = open_out(dir / (stem + ".vti"));
            const auto& g = ops.grid();
            io::write_vti(out, table, g.nx, g.ny, g.h, g.origin.x(), g.origin.y());
        }
    };
    double previous_dissipation = 0;
    mon.on_step = [&](const StaggeredState<double>& st, const EnergyLedger<double>& row) {
        track(st);
        o.max_relative_imbalance = std::max(o.max_relative_imbalance, relative_imbalance(row));
        if (row.dissipated_cum < previous_dissipation) {
            o.dissipation_monotone = false;
        }
        previous_dissipation = row.dissipated_cum;
        if (energy_out.is_open()) {
            io::write_energy_row(energy_out, row);
        }
    };

    track(s.initial);
    RunResult<double> result;
    try {
        result = std::visit(
            [&](const auto& p) { return run(s.initial, ops, p, s.program, tau, o.n_steps, mon); }, *s.process);
    } catch (const std::exception& e) {
        return finish(exit_failure, e.what(), "error");
    }

    o.a_min = result.ledger.empty() ? std::numeric_limits<double>::quiet_NaN() : result.a_min();
    o.ledger = std::move(result.ledger);
    o.bounds = result.bounds;
    o.steps_completed = result.state.k;
    if (adhesive) {
        for (Index i = 0; i < result.state.z.size(); ++i) {
            rup.ruptured += result.state.z[i] <= 0;
            rup.damaged += result.state.z[i] < 1;
        }
    }
    if (result.failure) {
        o.failed_step = result.failure->step;
        const bool blow_up = result.failure->kind == RunFailure::Kind::blow_up;
        return finish(blow_up ? exit_blow_up : exit_failure, result.failure->message,
                      blow_up ? "blow_up" : "process_error");
    }
    return finish(exit_ok, "", "completed");
}

}  // namespace leapfrog::driver
