// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero if any fails. Pass criterion numbers as arguments to run a subset.

#include "leapfrog/core/central_difference.hpp"
#include "leapfrog/core/cfl.hpp"
#include "leapfrog/core/integrator.hpp"
#include "leapfrog/driver/run_scenario.hpp"
#include "leapfrog/driver/studies.hpp"
#include "leapfrog/elastic2d/elastic_ops.hpp"
#include "leapfrog/processes/adhesive.hpp"
#include "leapfrog/processes/null_process.hpp"
#include "leapfrog/processes/viscoplastic.hpp"
#include "leapfrog/scenarios/build.hpp"
#include "leapfrog/scenarios/config.hpp"
#include "support/flow_oracles.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace leapfrog;
using Vec = Vector<double>;

namespace {

const MaterialParams<double> kMat{1.66, 1.0, 1.0};

struct Verdict {
    bool pass = false;
    std::string detail;
};

template <typename... T>
std::string describe(const T&... parts)
{
    std::ostringstream s;
    s.precision(6);
    (s << ... << parts);
    return s.str();
}

Elastic2D<double> square(Index n, double h, BoundarySpec<double> bc = {})
{
    return Elastic2D<double>(Grid2D<double>(n, n, h), kMat, std::move(bc));
}

StaggeredState<double> random_state(const Elastic2D<double>& ops, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    return make_state(ops, oracle::random_vector(rng, ops.size_S()), oracle::random_vector(rng, ops.size_H()), Vec());
}

Verdict conservation()
{
    auto ops = square(50, 0.2);
    NullProcess proc(ops);
    const double tau = 0.5 * estimate_tau_max(ops, proc).tau_max;
    const auto s0 = random_state(ops, 1);
    const Vector2<double> p0 = momentum(ops, s0.v);
    const auto res = run(s0, ops, proc, LoadProgram<double>{}, tau, 1000);
    if (res.failure) {
        return {false, res.failure->message};
    }
    const double e1 = res.ledger.front().total();
    double drift = 0;
    for (const auto& row : res.ledger) {
        drift = std::max(drift, std::abs(row.total() - e1) / e1);
    }
    const double pdrift = (momentum(ops, res.state.v) - p0).norm() / p0.norm();
    return {drift <= 1e-10 && pdrift <= 1e-12, describe("energy drift ", drift, ", momentum drift ", pdrift)};
}

Verdict dichotomy()
{
    auto ops = square(50, 0.2);
    NullProcess proc(ops);
    CflOptions opt;
    const double tau_max = estimate_tau_max(ops, proc, opt).tau_max;
    const auto s0 = random_state(ops, 2);
    const auto stable = run(s0, ops, proc, LoadProgram<double>{}, 0.95 * tau_max, 2000);
    const double a_min = stable.failure ? -1 : stable.a_min();
    const auto unstable = run(s0, ops, proc, LoadProgram<double>{}, 1.05 * tau_max, 2000);
    const bool blew = unstable.failure && unstable.failure->kind == RunFailure::Kind::blow_up;
    return {!stable.failure && a_min >= opt.eta && blew,
            describe("0.95: a_min ", a_min, "; 1.05: ",
                     blew ? "blow-up at step " + std::to_string(unstable.failure->step) : std::string("no blow-up"))};
}

Verdict cfl_dense()
{
    auto ops = square(8, 0.5);
    NullProcess proc(ops);
    const Index ns = ops.size_S();
    auto div = [&](const Vec& s) { return ops.apply_E_adjoint(ops.apply_C_adjoint(proc.phi_sigma_prime(s, Vec()))); };
    const oracle::Mat a = oracle::gram(
        ns, [&](const Vec& x, const Vec& y) { return ops.inner_H(div(x), ops.apply_mass_inverse(div(y))); });
    const oracle::Mat b =
        oracle::gram(ns, [&](const Vec& x, const Vec& y) { return ops.inner_S(proc.phi_sigma_prime(x, Vec()), y); });
    Eigen::GeneralizedSelfAdjointEigenSolver<oracle::Mat> es(0.5 * (a + a.transpose()), 0.5 * (b + b.transpose()));
    const double dense = std::sqrt((4 - 0.1) / es.eigenvalues().maxCoeff());
    const double est = estimate_tau_max(ops, proc).tau_max;
    const double rel = std::abs(est - dense) / dense;
    return {rel <= 1e-5, describe("tau_max ", est, " vs dense ", dense, ", rel ", rel)};
}

Verdict convergence()
{
    const auto r = driver::run_convergence(scenarios::convergence_study(3));
    return {r.order >= 1.7 && r.order <= 2.2, describe("cells 64/128/256, order ", r.order)};
}

Verdict cross_check()
{
    auto ops = square(50, 0.2);
    const Vec v0 = sample_cells(ops.grid(), [](const Vector2<double>& x) {
        const double r2 = (x - Vector2<double>(5, 5)).squaredNorm();
        return Vector2<double>(std::exp(-r2), 0.5 * std::exp(-r2));
    });
    NullProcess proc(ops);
    const double t_end = 1.0;
    auto diff = [&](int n) {
        const double tau = t_end / n;
        auto s = make_state(ops, Vec::Zero(ops.size_S()), v0, Vec());
        auto res = run(s, ops, proc, LoadProgram<double>{}, tau, n, RunMonitors<double>{{}, {}, {}, false});
        // u from the leap-frog run lags half a step in velocity.
        const Vec u_lf = res.state.u - tau / 2 * (res.state.v - v0);
        const Vec u_cd = central_difference_run(Vec::Zero(ops.size_H()), v0, ops, LoadProgram<double>{}, tau, n);
        return std::sqrt(ops.inner_H(u_lf - u_cd, u_lf - u_cd));
    };
    const double d1 = diff(20);
    const double d2 = diff(40);
    return {d1 / d2 >= 3.5 && d1 / d2 <= 4.5, describe("differences ", d1, ", ", d2, ", ratio ", d1 / d2)};
}

Verdict flow_rules()
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst_vp = 0;
    double worst_adh = 0;
    double worst_vi = std::numeric_limits<double>::infinity();

    BoundarySpec<double> bc;
    bc.adhesive = {{Side::bottom, 0}};
    auto ops = Elastic2D<double>(Grid2D<double>(2, 2, 0.5), kMat, bc);
    for (int rep = 0; rep < 1000; ++rep) {
        const ViscoplasticParams<double> p{u(rng), 0.1 + u(rng), rep % 2 ? u(rng) : 0.0};
        const double tau = 0.01 + 0.3 * u(rng);
        SymTensor2<double> pi0 = oracle::random_tensor(rng, 0.2);
        if (p.hardening == 0.0) {
            pi0 = deviator(pi0);
        }
        const SymTensor2<double> s = oracle::random_tensor(rng, 2.0);
        const SymTensor2<double> pi1 = viscoplastic_local_flow(kMat, p, s, pi0, tau);
        const SymTensor2<double> brute = oracle::viscoplastic_brute_force(kMat, p, s, pi0, tau);
        worst_vp = std::max(worst_vp, (brute - (pi1 - pi0) / tau).norm());

        // The same instance at every node of a small grid for the variational inequality.
        ViscoplasticProcess<double> proc(ops, p);
        Vec sig = Vec::Zero(ops.size_S());
        Vec z0 = Vec::Zero(proc.z_size());
        for (Index n = 0; n < ops.grid().node_count(); ++n) {
            sig.segment<3>(3 * n) = s;
            z0.segment<3>(3 * n) = pi0;
        }
        const Vec z1 = proc.solve_flow_rule(sig, z0, tau);
        const Vec rate = (z1 - z0) / tau;
        for (int d = 0; d < 10; ++d) {
            const Vec trial = rate + oracle::random_vector(rng, proc.z_size(), std::pow(10.0, d % 5 - 3));
            worst_vi = std::min(worst_vi, variational_residual(proc, sig, z0, z1, trial, tau));
        }
    }
    for (int rep = 0; rep < 1000; ++rep) {
        AdhesiveParams<double> p{0.02 * u(rng), rep % 3 == 0 ? 0.0 : 0.5 * u(rng) + 1e-3, rep % 3 == 2};
        const double elastic = 0.04 * u(rng);
        const double a0 = u(rng);
        const double tau = 0.005 + 0.1 * u(rng);
        const double d = elastic - p.toughness;
        const double a1 = adhesive_local_flow(p, d, a0, tau);
        worst_adh = std::max(worst_adh, std::abs(oracle::adhesive_brute_force(p, elastic, a0, tau) - a1));

        AdhesiveProcess<double> proc(ops, p);
        const Vec sig = oracle::random_vector(rng, ops.size_S(), 0.3);
        const Vec z0 = Vec::Constant(1, a0);
        const Vec z1 = proc.solve_flow_rule(sig, z0, tau);
        for (int k = 0; k < 10; ++k) {
            const Vec trial = oracle::random_vector(rng, 1, 1.0 / tau);
            worst_vi = std::min(worst_vi, variational_residual(proc, sig, z0, z1, trial, tau));
        }
    }
    return {worst_vp <= 1e-6 && worst_adh <= 1e-6 && worst_vi >= -1e-9,
            describe("max error viscoplastic ", worst_vp, ", adhesive ", worst_adh, "; min residual ", worst_vi)};
}

Verdict maxwell()
{
    const auto r = driver::maxwell_relaxation(kMat, ViscoplasticParams<double>{0.0, 1.0, 0.0}, 0.01, 1.0, 0.1);
    return {r.order >= 1.7 && r.order <= 2.3,
            describe("stress ", r.final_stress, " vs ", r.analytic, ", order ", r.order)};
}

/// Largest distance from the glued band's centre at which |field| reaches 1%
/// of its maximum, within the upward 45 degree cone.
double front_radius(const Grid2D<double>& g, const Vec& field)
{
    auto in_cone = [](const Vector2<double>& p) { return std::abs(p.x() - 5) <= p.y(); };
    double amax = 0;
    for (Index j = 0; j <= g.ny; ++j) {
        for (Index i = 0; i <= g.nx; ++i) {
            if (in_cone(g.node_position(i, j))) {
                amax = std::max(amax, std::abs(field[g.node(i, j)]));
            }
        }
    }
    double r = 0;
    for (Index j = 0; j <= g.ny; ++j) {
        for (Index i = 0; i <= g.nx; ++i) {
            const auto p = g.node_position(i, j);
            if (in_cone(p) && std::abs(field[g.node(i, j)]) >= 0.01 * amax) {
                r = std::max(r, std::hypot(p.x() - 5, p.y()));
            }
        }
    }
    return r;
}

Verdict wave_speeds_desk()
{
    auto c = scenarios::mode_I(true);
    c.time.snapshots.clear();
    driver::RunOptions opt;
    opt.write_files = false;
    const double tr = driver::run_scenario(c, opt).rupture.first_rupture_time;
    if (std::isnan(tr)) {
        return {false, "no rupture"};
    }
    // Waves emitted by the rupture are isolated by subtracting a run whose glue never breaks.
    c.time.snapshots = {tr + 1, tr + 3};
    c.time.duration = tr + 3.5;
    std::map<std::int64_t, Vec> broken;
    std::map<std::int64_t, Vec> intact;
    std::map<std::int64_t, double> times;
    opt.on_snapshot = [&](const scenarios::BuiltScenario&, const StaggeredState<double>& s) {
        broken[s.k] = s.v;
        times[s.k] = s.t;
    };
    driver::run_scenario(c, opt);
    auto reference = c;
    reference.process.toughness = 1e6;
    opt.on_snapshot = [&](const scenarios::BuiltScenario&, const StaggeredState<double>& s) { intact[s.k] = s.v; };
    driver::run_scenario(reference, opt);

    const auto built = scenarios::build_scenario(c);
    std::vector<double> rp, rs, t;
    for (const auto& [k, v] : broken) {
        const auto f = helmholtz(*built.ops, Vec(v - intact.at(k)));
        rp.push_back(front_radius(built.ops->grid(), f.div));
        rs.push_back(front_radius(built.ops->grid(), f.rot));
        t.push_back(times[k]);
    }
    if (t.size() != 2) {
        return {false, "missing snapshots"};
    }
    const double vp = (rp[1] - rp[0]) / (t[1] - t[0]);
    const double vs = (rs[1] - rs[0]) / (t[1] - t[0]);
    const auto [vp_ref, vs_ref] = wave_speeds(kMat);
    const bool ok = std::abs(vp - vp_ref) <= 0.1 * vp_ref && std::abs(vs - vs_ref) <= 0.1 * vs_ref;
    return {ok, describe("rupture at ", tr, ", P ", vp, " (", vp_ref, "), S ", vs, " (", vs_ref, ")")};
}

Verdict delamination()
{
    driver::RunOptions opt;
    opt.write_files = false;
    const auto one = driver::run_scenario(scenarios::mode_I(), opt);
    const auto two = driver::run_scenario(scenarios::mode_II(), opt);
    const auto& r1 = one.rupture;
    const auto& r2 = two.rupture;
    // The literal reading of the toughness sign, for comparison only.
    auto lit = scenarios::mode_I(true);
    lit.process.toughness_sign = "literal";
    lit.time.duration = 1;
    lit.time.snapshots.clear();
    const auto l = driver::run_scenario(lit, opt);

    const bool ok = one.exit_code == 0 && two.exit_code == 0 && std::abs(r1.first_rupture_time - 20) <= 3 &&
                    r1.segments == 40 && r1.damaged == 40 && r2.first_rupture_time > r1.first_rupture_time;
    return {ok, describe("mode I rupture at ", r1.first_rupture_time, " (segment ", r1.first_rupture_segment, "), ",
                         r1.damaged, "/", r1.segments, " damaged; mode II rupture at ", r2.first_rupture_time,
                         "; literal sign ruptures at t=", l.rupture.first_rupture_time, " (step ",
                         std::llround(l.rupture.first_rupture_time / l.time_step.tau), ")")};
}

Verdict imbalance()
{
    auto c = scenarios::mode_I(true);
    c.time.snapshots.clear();
    driver::RunOptions opt;
    opt.write_files = false;
    const auto o = driver::run_scenario(c, opt);
    return {o.exit_code == 0 && o.max_relative_imbalance <= 1e-8 && o.dissipation_monotone,
            describe("max relative imbalance ", o.max_relative_imbalance, ", dissipation ",
                     o.dissipation_monotone ? "monotone" : "not monotone")};
}

}  // namespace

int main(int argc, char** argv)
{
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"conservation", conservation},
        {"cfl dichotomy", dichotomy},
        {"cfl vs dense eigensolve", cfl_dense},
        {"convergence order", convergence},
        {"central difference cross-check", cross_check},
        {"flow-rule oracles", flow_rules},
        {"maxwell relaxation", maxwell},
        {"wave speeds", wave_speeds_desk},
        {"delamination", delamination},
        {"energy imbalance", imbalance},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i) {
        only.insert(std::atoi(argv[i]));
    }
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        if (!only.empty() && !only.count(n)) {
            continue;
        }
        const auto start = std::chrono::steady_clock::now();
        Verdict v;
        try {
            v = criteria[i].second();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("criterion %d %s: %s (%s; %.1f s)\n", n, criteria[i].first.c_str(), v.pass ? "PASS" : "FAIL",
                    v.detail.c_str(), secs);
        std::fflush(stdout);
        failed += !v.pass;
    }
    return failed == 0 ? 0 : 1;
}
