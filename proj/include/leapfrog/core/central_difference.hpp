#pragma once

#include "leapfrog/core/dof.hpp"
#include "leapfrog/core/errors.hpp"
#include "leapfrog/core/load_program.hpp"
#include "leapfrog/core/system_ops.hpp"

#include <cstdint>
#include <string>

namespace leapfrog {

// Classical displacement form of linear elastodynamics, kept as an
// independent reference for the staggered scheme.

template <SystemOps Ops>
Vector<ScalarOf<Ops>> elastic_force(const Ops& ops, const Vector<ScalarOf<Ops>>& u)
{
    return ops.apply_E_adjoint(ops.apply_C(ops.apply_E(u)));
}

/// u^1 = u^0 + tau v^0 + tau^2/2 M^-1 (F(0) - E* C E u^0).
template <SystemOps Ops>
Vector<ScalarOf<Ops>> central_difference_start(const Vector<ScalarOf<Ops>>& u0, const Vector<ScalarOf<Ops>>& v0,
                                               const Ops& ops, const LoadProgram<ScalarOf<Ops>>& program,
                                               ScalarOf<Ops> tau)
{
    const auto f = evaluate_force(program, ops.size_H(), ScalarOf<Ops>(0));
    return u0 + tau * v0 + (tau * tau / 2) * ops.apply_mass_inverse(f - elastic_force(ops, u0));
}

/// u^{k+1} = 2 u^k - u^{k-1} + tau^2 M^-1 (F(k tau) - E* C E u^k).
template <SystemOps Ops>
Vector<ScalarOf<Ops>> central_difference_step(const Vector<ScalarOf<Ops>>& u_prev, const Vector<ScalarOf<Ops>>& u_curr,
                                              const Ops& ops, const LoadProgram<ScalarOf<Ops>>& program,
                                              ScalarOf<Ops> tau, std::int64_t k)
{
    using Scalar = ScalarOf<Ops>;
    const auto f = evaluate_force(program, ops.size_H(), static_cast<Scalar>(k) * tau);
    Vector<Scalar> next =
        Scalar(2) * u_curr - u_prev + (tau * tau) * ops.apply_mass_inverse(f - elastic_force(ops, u_curr));
    if (!within_blow_up_bound(next)) {
        throw BlowUpError(k + 1, "central-difference blow-up at step " + std::to_string(k + 1));
    }
    return next;
}

/// Displacement after n_steps central-difference steps from (u0, v0).
template <SystemOps Ops>
Vector<ScalarOf<Ops>> central_difference_run(const Vector<ScalarOf<Ops>>& u0, const Vector<ScalarOf<Ops>>& v0,
                                             const Ops& ops, const LoadProgram<ScalarOf<Ops>>& program,
                                             ScalarOf<Ops> tau, std::int64_t n_steps)
{
    if (n_steps <= 0) {
        return u0;
    }
    Vector<ScalarOf<Ops>> prev = u0;
    Vector<ScalarOf<Ops>> curr = central_difference_start(u0, v0, ops, program, tau);
    for (std::int64_t k = 1; k < n_steps; ++k) {
        Vector<ScalarOf<Ops>> next = central_difference_step(prev, curr, ops, program, tau, k);
        prev = std::move(curr);
        curr = std::move(next);
    }
    return curr;
}

}  // namespace leapfrog
