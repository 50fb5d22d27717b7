#pragma once

#include "leapfrog/core/dof.hpp"
#include "leapfrog/core/errors.hpp"
#include "leapfrog/core/log.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <string>

namespace leapfrog {

/// Time-dependent external loading.
///
/// `force` is the body/surface force density in H, `stress_load` the
/// Dirichlet-type contribution G in S (e.g. the adhesive block B u_D(t)).
/// Either may be left empty, meaning zero. When `force_integral` (an
/// antiderivative of `force` vanishing at t=0) is set, step averages are exact;
/// otherwise a composite midpoint rule with `quadrature_points` nodes is used.
template <typename Scalar>
struct LoadProgram {
    using Field = std::function<Vector<Scalar>(Scalar)>;

    Field force;
    Field force_integral;
    Field stress_load;
    int quadrature_points = 4;
    Scalar horizon = std::numeric_limits<Scalar>::infinity();
    bool force_time_varying = false;

    /// Shared so copies of one program warn at most once between them.
    std::shared_ptr<std::atomic<bool>> clamp_warned = std::make_shared<std::atomic<bool>>(false);

    Scalar clamp_time(Scalar t) const
    {
        if (t <= horizon) {
            return t;
        }
        if (clamp_warned && !clamp_warned->exchange(true)) {
            log::warn("load evaluated past its horizon (t=" + std::to_string(static_cast<double>(t)) +
                      "), clamping to " + std::to_string(static_cast<double>(horizon)));
        }
        return horizon;
    }
};

namespace detail {

template <typename Scalar>
Vector<Scalar> checked(Vector<Scalar> x, Index n, const char* what)
{
    if (x.size() != n) {
        throw ConfigError(std::string(what) + " has size " + std::to_string(x.size()) + ", expected " +
                          std::to_string(n));
    }
    return x;
}

template <typename Scalar>
Vector<Scalar> eval_force_integral(const LoadProgram<Scalar>& p, Index n, Scalar t)
{
    // The antiderivative is continued linearly past the horizon, which matches
    // clamping the integrand itself.
    if (t <= p.horizon) {
        return checked<Scalar>(p.force_integral(t), n, "force integral");
    }
    p.clamp_time(t);
    return checked<Scalar>(p.force_integral(p.horizon), n, "force integral") +
           (t - p.horizon) * checked<Scalar>(p.force(p.horizon), n, "force");
}

}  // namespace detail

/// F evaluated at t (clamped to the horizon).
template <typename Scalar>
Vector<Scalar> evaluate_force(const LoadProgram<Scalar>& p, Index size_H, Scalar t)
{
    if (!p.force) {
        return Vector<Scalar>::Zero(size_H);
    }
    return detail::checked<Scalar>(p.force(p.clamp_time(t)), size_H, "force");
}

/// G evaluated at t (clamped to the horizon).
template <typename Scalar>
Vector<Scalar> evaluate_stress_load(const LoadProgram<Scalar>& p, Index size_S, Scalar t)
{
    if (!p.stress_load) {
        return Vector<Scalar>::Zero(size_S);
    }
    return detail::checked<Scalar>(p.stress_load(p.clamp_time(t)), size_S, "stress load");
}

/// Mean of F over [k tau, (k+1) tau].
template <typename Scalar>
Vector<Scalar> average_load_F(const LoadProgram<Scalar>& p, Index size_H, std::int64_t k, Scalar tau)
{
    if (!p.force) {
        return Vector<Scalar>::Zero(size_H);
    }
    const Scalar t0 = static_cast<Scalar>(k) * tau;
    const Scalar t1 = static_cast<Scalar>(k + 1) * tau;
    if (p.force_integral) {
        return (detail::eval_force_integral(p, size_H, t1) - detail::eval_force_integral(p, size_H, t0)) / tau;
    }
    const int n = std::max(1, p.quadrature_points);
    Vector<Scalar> acc = Vector<Scalar>::Zero(size_H);
    for (int q = 0; q < n; ++q) {
        const Scalar t = t0 + (static_cast<Scalar>(q) + Scalar(0.5)) * tau / static_cast<Scalar>(n);
        acc += evaluate_force(p, size_H, t);
    }
    return acc / static_cast<Scalar>(n);
}

/// Difference quotient of G between the staggered instants (k-1/2) tau and
/// (k+1/2) tau. At k = 0 the one-sided quotient 2 (G(tau/2) - G(0)) / tau.
template <typename Scalar>
Vector<Scalar> difference_load_G(const LoadProgram<Scalar>& p, Index size_S, std::int64_t k, Scalar tau)
{
    if (!p.stress_load) {
        return Vector<Scalar>::Zero(size_S);
    }
    const Scalar kk = static_cast<Scalar>(k);
    if (k == 0) {
        return Scalar(2) * (evaluate_stress_load(p, size_S, tau / 2) - evaluate_stress_load(p, size_S, Scalar(0))) /
               tau;
    }
    return (evaluate_stress_load(p, size_S, (kk + Scalar(0.5)) * tau) -
            evaluate_stress_load(p, size_S, (kk - Scalar(0.5)) * tau)) /
           tau;
}

}  // namespace leapfrog
