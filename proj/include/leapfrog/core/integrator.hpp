#pragma once

#include "leapfrog/core/dof.hpp"
#include "leapfrog/core/errors.hpp"
#include "leapfrog/core/internal_process.hpp"
#include "leapfrog/core/load_program.hpp"
#include "leapfrog/core/log.hpp"
#include "leapfrog/core/system_ops.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace leapfrog {

/// Integrator state after k steps.
///
/// sigma lives at the staggered level (k - 1/2) tau except at k = 0, where it
/// is the initial proto-stress. v and u are at t = k tau.
template <typename Scalar>
struct StaggeredState {
    Vector<Scalar> sigma;
    Vector<Scalar> v;
    Vector<Scalar> z;
    Vector<Scalar> u;
    std::int64_t k = 0;
    Scalar t = 0;
};

/// One row of the energy audit, describing the state after step k.
template <typename Scalar>
struct EnergyLedger {
    std::int64_t k = 0;
    Scalar t = 0;
    Scalar twisted_kinetic = 0;
    Scalar stored = 0;
    Scalar dissipated_cum = 0;
    Scalar work_cum = 0;
    Scalar a_coeff = 1;
    Scalar imbalance = 0;

    Scalar total() const { return twisted_kinetic + stored; }
};

/// Intermediate quantities of one step, kept for the energy audit.
template <typename Scalar>
struct StepTrace {
    Vector<Scalar> force;         ///< F^{k+1}
    Vector<Scalar> stress_rate;   ///< D^k
    Vector<Scalar> phi_prime;     ///< Phi'_Sigma(Sigma^{k+1}, z^{k+1})
    Vector<Scalar> div_stress;    ///< E* C* phi_prime
};

template <SystemOps Ops>
StaggeredState<ScalarOf<Ops>> make_state(const Ops& ops, Vector<ScalarOf<Ops>> sigma0, Vector<ScalarOf<Ops>> v0,
                                         Vector<ScalarOf<Ops>> z0)
{
    if (sigma0.size() != ops.size_S() || v0.size() != ops.size_H()) {
        throw ConfigError("initial data does not match the discretisation");
    }
    StaggeredState<ScalarOf<Ops>> s;
    s.sigma = std::move(sigma0);
    s.u = Vector<ScalarOf<Ops>>::Zero(v0.size());
    s.v = std::move(v0);
    s.z = std::move(z0);
    return s;
}

/// Sigma^{1/2} = Sigma^0 + tau/2 (C E v^0 + D^0).
template <SystemOps Ops>
Vector<ScalarOf<Ops>> init_half_step(const Vector<ScalarOf<Ops>>& sigma0, const Vector<ScalarOf<Ops>>& v0,
                                     ScalarOf<Ops> tau, const Ops& ops,
                                     const LoadProgram<ScalarOf<Ops>>& program = {})
{
    if (sigma0.size() != ops.size_S() || v0.size() != ops.size_H()) {
        throw ConfigError("init_half_step: dimension mismatch");
    }
    return sigma0 + (tau / 2) * (ops.apply_C(ops.apply_E(v0)) + difference_load_G(program, ops.size_S(), 0, tau));
}

/// Advance one step of the staggered scheme: stress update, flow rule, then
/// velocity and displacement update.
template <SystemOps Ops, InternalProcess P>
StaggeredState<ScalarOf<Ops>> step(const StaggeredState<ScalarOf<Ops>>& state, const Ops& ops, const P& process,
                                   const LoadProgram<ScalarOf<Ops>>& program, ScalarOf<Ops> tau,
                                   StepTrace<ScalarOf<Ops>>* trace = nullptr)
{
    using Scalar = ScalarOf<Ops>;
    if (state.sigma.size() != ops.size_S() || state.v.size() != ops.size_H() || state.z.size() != process.z_size()) {
        throw ConfigError("step: state does not match the discretisation");
    }
    const std::int64_t k = state.k;

    StaggeredState<Scalar> next;
    Vector<Scalar> d = difference_load_G(program, ops.size_S(), k, tau);
    if (k == 0) {
        next.sigma = state.sigma + (tau / 2) * (ops.apply_C(ops.apply_E(state.v)) + d);
    } else {
        next.sigma = state.sigma + tau * (ops.apply_C(ops.apply_E(state.v)) + d);
    }
    next.z = process.solve_flow_rule(next.sigma, state.z, tau);

    Vector<Scalar> phi_prime = process.phi_sigma_prime(next.sigma, next.z);
    Vector<Scalar> div_stress = ops.apply_E_adjoint(ops.apply_C_adjoint(phi_prime));
    Vector<Scalar> force = average_load_F(program, ops.size_H(), k, tau);
    next.v = state.v + tau * ops.apply_mass_inverse(force - div_stress);
    next.u = state.u + tau * next.v;
    next.k = k + 1;
    next.t = static_cast<Scalar>(next.k) * tau;

    if (!within_blow_up_bound(next.sigma) || !within_blow_up_bound(next.v) || !within_blow_up_bound(next.z)) {
        throw BlowUpError(next.k, "numerical blow-up at step " + std::to_string(next.k) + " (t=" +
                                      std::to_string(static_cast<double>(next.t)) +
                                      "); the time step likely violates the CFL bound");
    }
    if (trace) {
        trace->force = std::move(force);
        trace->stress_rate = std::move(d);
        trace->phi_prime = std::move(phi_prime);
        trace->div_stress = std::move(div_stress);
    }
    return next;
}

/// a = 1 - tau^2 <E*S, M^-1 E*S> / (8 Phi): the fraction of Phi that the
/// twisted energy is guaranteed to dominate.
template <SystemOps Ops>
ScalarOf<Ops> a_coefficient(const Ops& ops, const Vector<ScalarOf<Ops>>& div_stress, ScalarOf<Ops> phi,
                            ScalarOf<Ops> tau)
{
    using Scalar = ScalarOf<Ops>;
    if (!(phi > Scalar(0))) {
        return Scalar(1);
    }
    const Scalar q = ops.inner_H(div_stress, ops.apply_mass_inverse(div_stress));
    return Scalar(1) - tau * tau * q / (Scalar(8) * phi);
}

/// Per-step energy bookkeeping.
///
/// For k >= 1 the discrete identity
///   E^{k+1} - E^k + [Phi(S^{k+1}, z^k) - Phi(S^{k+1}, z^{k+1})] - W
///     + 1/2 <Phi'(S^{k+1}, z^{k+1}) - Phi'(S^{k+1}, z^k), S^{k+1} - S^k> = 0
/// holds exactly whenever Phi(., z) is quadratic; its left side is reported as
/// the imbalance. The first step starts from the half step and is not audited.
template <SystemOps Ops, InternalProcess P>
class EnergyAuditor {
public:
    using Scalar = ScalarOf<Ops>;

    EnergyAuditor(const Ops& ops, const P& process, const LoadProgram<Scalar>& program, Scalar tau)
        : ops_(&ops), process_(&process), program_(&program), tau_(tau)
    {
    }

    void begin(const StaggeredState<Scalar>& s)
    {
        const Ops& ops = *ops_;
        phi_prime_ = process_->phi_sigma_prime(s.sigma, s.z);
        if (s.k == 0) {
            energy_ = ops.inner_H(ops.apply_mass(s.v), s.v) / 2 + process_->phi(s.sigma, s.z);
            force_ = Vector<Scalar>::Zero(ops.size_H());
            return;
        }
        // Resuming mid-run: recover v^{k-1} from the velocity update.
        force_ = average_load_F(*program_, ops.size_H(), s.k - 1, tau_);
        const Vector<Scalar> div = ops.apply_E_adjoint(ops.apply_C_adjoint(phi_prime_));
        const Vector<Scalar> v_prev = s.v - tau_ * ops.apply_mass_inverse(force_ - div);
        energy_ = ops.inner_H(ops.apply_mass(s.v), v_prev) / 2 + process_->phi(s.sigma, s.z);
    }

    EnergyLedger<Scalar> record(const StaggeredState<Scalar>& prev, const StepTrace<Scalar>& tr,
                                const StaggeredState<Scalar>& next)
    {
        const Ops& ops = *ops_;
        const P& proc = *process_;
        const Scalar tau = tau_;

        EnergyLedger<Scalar> row;
        row.k = next.k;
        row.t = next.t;
        row.twisted_kinetic = ops.inner_H(ops.apply_mass(next.v), prev.v) / 2;
        row.stored = proc.phi(next.sigma, next.z);

        const bool z_changed = next.z.size() > 0 && next.z != prev.z;
        Scalar released = 0;
        Scalar cross = 0;
        Scalar dissipated = 0;
        if (z_changed) {
            released = proc.phi(next.sigma, prev.z) - row.stored;
            const Vector<Scalar> frozen = proc.phi_sigma_prime(next.sigma, prev.z);
            cross = ops.inner_S(tr.phi_prime - frozen, next.sigma - prev.sigma) / 2;
            dissipated = dissipation_increment(proc, next.sigma, prev.z, next.z, tau);
        }

        Scalar work = 0;
        const Scalar energy = row.total();
        if (prev.k == 0) {
            work = tau * ops.inner_H(tr.force, (prev.v + next.v) / 2) +
                   tau / 2 * ops.inner_S(tr.phi_prime, tr.stress_rate);
            row.imbalance = 0;
        } else {
            work = tau * ops.inner_H((tr.force + force_) / 2, prev.v) +
                   tau * ops.inner_S((tr.phi_prime + phi_prime_) / 2, tr.stress_rate);
            row.imbalance = (energy - energy_) + released - work + cross;
        }

        dissipated_cum_ += dissipated;
        work_cum_ += work;
        row.dissipated_cum = dissipated_cum_;
        row.work_cum = work_cum_;
        row.a_coeff = a_coefficient(ops, tr.div_stress, row.stored, tau);

        energy_ = energy;
        force_ = tr.force;
        phi_prime_ = tr.phi_prime;
        return row;
    }

private:
    const Ops* ops_;
    const P* process_;
    const LoadProgram<Scalar>* program_;
    Scalar tau_;
    Scalar energy_ = 0;
    Scalar dissipated_cum_ = 0;
    Scalar work_cum_ = 0;
    Vector<Scalar> force_;
    Vector<Scalar> phi_prime_;
};

/// Stand-alone audit of one step: runs the step and returns the new state with
/// its ledger row (cumulative columns hold just this step's increments).
template <SystemOps Ops, InternalProcess P>
std::pair<StaggeredState<ScalarOf<Ops>>, EnergyLedger<ScalarOf<Ops>>> energy_report(
    const StaggeredState<ScalarOf<Ops>>& state, const Ops& ops, const P& process,
    const LoadProgram<ScalarOf<Ops>>& program, ScalarOf<Ops> tau)
{
    EnergyAuditor<Ops, P> auditor(ops, process, program, tau);
    auditor.begin(state);
    StepTrace<ScalarOf<Ops>> tr;
    auto next = step(state, ops, process, program, tau, &tr);
    auto row = auditor.record(state, tr, next);
    return {std::move(next), row};
}

template <typename Scalar>
struct RunMonitors {
    /// Step indices k at which on_snapshot fires (k = 0 means the initial state).
    std::vector<std::int64_t> snapshot_steps;
    std::function<void(const StaggeredState<Scalar>&)> on_snapshot;
    /// Called after every accepted step with its ledger row.
    std::function<void(const StaggeredState<Scalar>&, const EnergyLedger<Scalar>&)> on_step;
    bool audit = true;
};

struct RunFailure {
    enum class Kind { blow_up, process };
    Kind kind = Kind::blow_up;
    std::int64_t step = 0;
    std::string message;
};

template <typename Scalar>
struct RunBounds {
    Scalar sup_v = 0;
    Scalar sup_sigma = 0;
    Scalar sup_z = 0;
};

template <typename Scalar>
struct RunResult {
    StaggeredState<Scalar> state;
    std::vector<EnergyLedger<Scalar>> ledger;
    std::optional<RunFailure> failure;
    RunBounds<Scalar> bounds;

    Scalar a_min() const
    {
        Scalar a = std::numeric_limits<Scalar>::infinity();
        for (const auto& row : ledger) {
            a = std::min(a, row.a_coeff);
        }
        return a;
    }
};

/// Run n_steps steps, auditing energy and firing monitors. Step failures stop
/// the run and are reported in the result together with the partial ledger.
template <SystemOps Ops, InternalProcess P>
RunResult<ScalarOf<Ops>> run(StaggeredState<ScalarOf<Ops>> state, const Ops& ops, const P& process,
                             const LoadProgram<ScalarOf<Ops>>& program, ScalarOf<Ops> tau, std::int64_t n_steps,
                             const RunMonitors<ScalarOf<Ops>>& monitors = {})
{
    using Scalar = ScalarOf<Ops>;
    if (!(tau > Scalar(0))) {
        throw ConfigError("time step must be positive");
    }
    if (program.force_time_varying && n_steps > 0) {
        log::info("time-varying force: the energy-stability bound assumes constant loads");
    }

    RunResult<Scalar> result;
    auto update_bounds = [&](const StaggeredState<Scalar>& s) {
        auto& b = result.bounds;
        b.sup_v = std::max(b.sup_v, std::sqrt(std::max(Scalar(0), ops.inner_H(s.v, s.v))));
        b.sup_sigma = std::max(b.sup_sigma, std::sqrt(std::max(Scalar(0), ops.inner_S(s.sigma, s.sigma))));
        b.sup_z = std::max(b.sup_z, s.z.size() ? s.z.norm() : Scalar(0));
    };
    auto snapshot_due = [&](std::int64_t k) {
        return monitors.on_snapshot &&
               std::find(monitors.snapshot_steps.begin(), monitors.snapshot_steps.end(), k) !=
                   monitors.snapshot_steps.end();
    };

    update_bounds(state);
    if (snapshot_due(state.k)) {
        monitors.on_snapshot(state);
    }
    if (n_steps <= 0) {
        result.state = std::move(state);
        return result;
    }

    EnergyAuditor<Ops, P> auditor(ops, process, program, tau);
    if (monitors.audit) {
        auditor.begin(state);
        result.ledger.reserve(static_cast<std::size_t>(n_steps));
    }
    StepTrace<Scalar> trace;
    for (std::int64_t i = 0; i < n_steps; ++i) {
        StaggeredState<Scalar> next;
        try {
            next = step(state, ops, process, program, tau, &trace);
        } catch (const BlowUpError& e) {
            result.failure = RunFailure{RunFailure::Kind::blow_up, e.step(), e.what()};
            break;
        } catch (const ProcessError& e) {
            result.failure = RunFailure{RunFailure::Kind::process, state.k + 1, e.what()};
            break;
        }
        EnergyLedger<Scalar> row;
        if (monitors.audit) {
            row = auditor.record(state, trace, next);
            result.ledger.push_back(row);
        }
        state = std::move(next);
        update_bounds(state);
        if (monitors.on_step) {
            monitors.on_step(state, row);
        }
        if (snapshot_due(state.k)) {
            monitors.on_snapshot(state);
        }
    }
    result.state = std::move(state);
    return result;
}

}  // namespace leapfrog
