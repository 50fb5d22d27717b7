#pragma once

#include "leapfrog/core/dof.hpp"

#include <concepts>

namespace leapfrog {

/// An internal-variable process: the stored energy Phi(Sigma, z), its partial
/// derivatives, the dissipation potential Psi and the local flow-rule solver.
///
/// phi_sigma_prime is the gradient with respect to the discretisation's
/// inner_S, so that d/ds Phi(Sigma + s dS, z) = inner_S(phi_sigma_prime, dS).
/// phi_z_prime is the plain Euclidean gradient in the coefficients of z.
/// psi(z_old, rate, tau) may return +inf for inadmissible rates; z_old is passed
/// so state-dependent constraints (e.g. 0 <= alpha <= 1) can be expressed.
template <typename P>
concept InternalProcess =
    requires(const P& p, const Vector<typename P::Scalar>& x, typename P::Scalar tau) {
        typename P::Scalar;
        { p.z_size() } -> std::convertible_to<Index>;
        { p.initial_state() } -> std::convertible_to<Vector<typename P::Scalar>>;
        { p.stiffest_state() } -> std::convertible_to<Vector<typename P::Scalar>>;
        { p.phi(x, x) } -> std::convertible_to<typename P::Scalar>;
        { p.phi_sigma_prime(x, x) } -> std::convertible_to<Vector<typename P::Scalar>>;
        { p.phi_z_prime(x, x) } -> std::convertible_to<Vector<typename P::Scalar>>;
        { p.psi(x, x, tau) } -> std::convertible_to<typename P::Scalar>;
        { p.solve_flow_rule(x, x, tau) } -> std::convertible_to<Vector<typename P::Scalar>>;
    };

/// Energy released by the internal-variable update at frozen Sigma. Processes
/// may override with a member of the same name.
template <InternalProcess P>
typename P::Scalar dissipation_increment(const P& p, const Vector<typename P::Scalar>& sigma,
                                         const Vector<typename P::Scalar>& z_old,
                                         const Vector<typename P::Scalar>& z_new, typename P::Scalar tau)
{
    if constexpr (requires { p.dissipation_increment(sigma, z_old, z_new, tau); }) {
        return p.dissipation_increment(sigma, z_old, z_new, tau);
    } else {
        (void)tau;
        if (z_old.size() == 0) {
            return typename P::Scalar(0);
        }
        return p.phi(sigma, z_old) - p.phi(sigma, z_new);
    }
}

/// Difference quotient of Phi(Sigma, .) between z_old and z_new. Defaults to
/// the midpoint gradient, which is exact whenever Phi(Sigma, .) is at most
/// quadratic.
template <InternalProcess P>
Vector<typename P::Scalar> phi_z_quotient(const P& p, const Vector<typename P::Scalar>& sigma,
                                          const Vector<typename P::Scalar>& z_old,
                                          const Vector<typename P::Scalar>& z_new)
{
    if constexpr (requires { p.phi_z_quotient(sigma, z_old, z_new); }) {
        return p.phi_z_quotient(sigma, z_old, z_new);
    } else {
        const Vector<typename P::Scalar> mid = (z_old + z_new) / 2;
        return p.phi_z_prime(sigma, mid);
    }
}

/// Residual of the flow-rule variational inequality for one trial rate:
/// Psi(trial) + <Phi'_z(Sigma, midpoint), trial - rate> - Psi(rate).
/// Non-negative (up to roundoff) for every trial iff `rate` solves the rule.
template <InternalProcess P>
typename P::Scalar variational_residual(const P& p, const Vector<typename P::Scalar>& sigma,
                                        const Vector<typename P::Scalar>& z_old,
                                        const Vector<typename P::Scalar>& z_new,
                                        const Vector<typename P::Scalar>& trial_rate, typename P::Scalar tau)
{
    const Vector<typename P::Scalar> rate = (z_new - z_old) / tau;
    const Vector<typename P::Scalar> g = phi_z_quotient(p, sigma, z_old, z_new);
    return p.psi(z_old, trial_rate, tau) + g.dot(trial_rate - rate) - p.psi(z_old, rate, tau);
}

}  // namespace leapfrog
