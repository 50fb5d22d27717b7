#include "leapfrog/scenarios/build.hpp"

#include "leapfrog/core/cfl.hpp"
#include "leapfrog/io/format.hpp"

#include <cmath>

namespace leapfrog::scenarios {

namespace {

Side parse_side(const std::string& s)
{
    if (s == "bottom") return Side::bottom;
    if (s == "right") return Side::right;
    if (s == "top") return Side::top;
    if (s == "left") return Side::left;
    throw ConfigError("unknown side '" + s + "'");
}

Vector<double> initial_velocity(const ScenarioConfig& c, const Grid2D<double>& g)
{
    const auto& l = c.loading;
    const Vector2<double> amp(l.velocity_x, l.velocity_y);
    if (l.kind == LoadKind::translation) {
        return sample_cells(g, [&](const Vector2<double>&) { return amp; });
    }
    if (l.kind == LoadKind::pulse) {
        const Vector2<double> centre(l.center_x, l.center_y);
        const double w2 = l.width * l.width;
        return sample_cells(g, [&](const Vector2<double>& x) {
            return Vector2<double>(amp * std::exp(-(x - centre).squaredNorm() / w2));
        });
    }
    return Vector<double>::Zero(2 * g.cell_count());
}

}  // namespace

std::vector<SegmentRef> adhesive_band(const ScenarioConfig& c)
{
    const double n = static_cast<double>(c.domain.nx);
    const auto first = static_cast<Index>(std::floor(c.process.band_start * n + 1e-9));
    const auto end = static_cast<Index>(std::ceil(c.process.band_end * n - 1e-9));
    std::vector<SegmentRef> band;
    for (Index i = first; i < end; ++i) {
        band.push_back({Side::bottom, i});
    }
    if (band.empty()) {
        throw ConfigError("adhesive band covers no segment");
    }
    return band;
}

BuiltScenario build_scenario(const ScenarioConfig& c)
{
    c.validate();
    BuiltScenario s;
    s.config = c;

    Grid2D<double> grid(c.domain.nx, c.domain.ny, c.h());
    MaterialParams<double> mat{c.material.bulk_modulus, c.material.shear_modulus, c.material.density};

    BoundarySpec<double> bc;
    if (c.process.kind == ProcessKind::adhesive) {
        bc.adhesive = adhesive_band(c);
        bc.stiffness << c.process.stiffness_xx, c.process.stiffness_xy, c.process.stiffness_xy,
            c.process.stiffness_yy;
    }
    const auto& l = c.loading;
    if (l.kind == LoadKind::ramp_normal || l.kind == LoadKind::ramp_tangential) {
        const Side side = parse_side(l.side);
        const Vector2<double> n = outward_normal<double>(side);
        // Counter-clockwise tangent along the boundary.
        const Vector2<double> dir = l.kind == LoadKind::ramp_normal ? n : Vector2<double>(-n.y(), n.x());
        const Vector2<double> rate = l.amplitude / l.ramp_time * dir;
        TractionPatch<double> patch;
        patch.side = side;
        patch.traction = [rate](double t) { return Vector2<double>(rate * t); };
        patch.traction_integral = [rate](double t) { return Vector2<double>(rate * (t * t / 2)); };
        bc.tractions.push_back(patch);
    }

    s.ops = std::make_unique<Ops>(grid, mat, bc);
    const Ops& ops = *s.ops;
    switch (c.process.kind) {
    case ProcessKind::null:
        s.process = std::make_unique<Process>(std::in_place_type<NullProcess<Ops>>, ops);
        break;
    case ProcessKind::viscoplastic:
        s.process = std::make_unique<Process>(
            std::in_place_type<ViscoplasticProcess<double>>, ops,
            ViscoplasticParams<double>{c.process.yield_stress, c.process.viscosity, c.process.hardening});
        break;
    case ProcessKind::adhesive: {
        AdhesiveParams<double> p;
        p.toughness = c.process.toughness;
        p.eps1 = c.process.eps1;
        p.healing = c.process.healing;
        p.sign = c.process.toughness_sign == "literal" ? ToughnessSign::literal : ToughnessSign::threshold;
        s.process = std::make_unique<Process>(std::in_place_type<AdhesiveProcess<double>>, ops, p);
        break;
    }
    }

    s.program = make_load_program(ops, c.time.duration);
    const Vector<double> z0 = std::visit([](const auto& p) { return p.initial_state(); }, *s.process);
    s.initial = make_state(ops, Vector<double>::Zero(ops.size_S()), initial_velocity(c, grid), z0);
    return s;
}

TimeStep resolve_time_step(const BuiltScenario& s)
{
    const auto& tc = s.config.time;
    CflOptions opt;
    opt.eta = tc.eta;
    opt.seed = static_cast<std::uint64_t>(s.config.output.seed);
    const auto est = std::visit([&](const auto& p) { return estimate_tau_max(*s.ops, p, opt); }, *s.process);

    TimeStep ts;
    ts.tau_max = est.tau_max;
    ts.lambda_max = est.lambda_max;
    ts.iterations = est.iterations;
    ts.tau = tc.tau > 0 ? tc.tau : tc.cfl_factor * est.tau_max;
    if (!std::isfinite(ts.tau)) {
        throw ConfigError("no positive time step: the operator has no stiffness; set time.tau");
    }
    ts.ratio = ts.tau / est.tau_max;
    if (ts.tau > est.tau_max && !tc.allow_unstable) {
        throw ConfigError("time step " + io::format_double(ts.tau) + " exceeds tau_max = " +
                          io::format_double(est.tau_max) + "; set allow_unstable to run anyway");
    }
    return ts;
}

std::int64_t step_count(double duration, double tau)
{
    return static_cast<std::int64_t>(std::ceil(duration / tau - 1e-9));
}

std::vector<std::int64_t> snapshot_steps(const std::vector<double>& times, double tau)
{
    std::vector<std::int64_t> out;
    for (double t : times) {
        out.push_back(std::max<std::int64_t>(0, static_cast<std::int64_t>(std::ceil(t / tau - 1e-9))));
    }
    return out;
}

}  // namespace leapfrog::scenarios
