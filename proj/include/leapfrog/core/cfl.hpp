#pragma once

#include "leapfrog/core/dof.hpp"
#include "leapfrog/core/errors.hpp"
#include "leapfrog/core/internal_process.hpp"
#include "leapfrog/core/system_ops.hpp"

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>

namespace leapfrog {

struct CflOptions {
    double eta = 0.1;
    double tolerance = 1e-6;
    int max_iterations = 10000;
    std::uint64_t seed = 0;
};

template <typename Scalar>
struct CflEstimate {
    Scalar tau_max = 0;
    Scalar lambda_max = 0;  ///< largest eigenvalue of M^-1 E* C* B C E
    int iterations = 0;
};

/// Apply the linearised acceleration operator v -> M^-1 E* C* B C E v, where
/// B Sigma = Phi'_Sigma(Sigma, z) - Phi'_Sigma(0, z) at a fixed internal state.
template <SystemOps Ops, InternalProcess P>
Vector<ScalarOf<Ops>> apply_wave_operator(const Ops& ops, const P& process, const Vector<ScalarOf<Ops>>& z,
                                          const Vector<ScalarOf<Ops>>& phi_prime_at_zero,
                                          const Vector<ScalarOf<Ops>>& x)
{
    const Vector<ScalarOf<Ops>> sigma = ops.apply_C(ops.apply_E(x));
    const Vector<ScalarOf<Ops>> b = process.phi_sigma_prime(sigma, z) - phi_prime_at_zero;
    return ops.apply_mass_inverse(ops.apply_E_adjoint(ops.apply_C_adjoint(b)));
}

/// Largest stable time step tau_max = sqrt((4 - eta) / lambda_max), with
/// lambda_max found by power iteration in velocity space at the process's
/// stiffest internal state. The mass-weighted Rayleigh quotient equals the
/// proto-stress quotient <E*S, M^-1 E*S> / (2 Phi) over the range of C E.
template <SystemOps Ops, InternalProcess P>
CflEstimate<ScalarOf<Ops>> estimate_tau_max(const Ops& ops, const P& process, const CflOptions& opt = {})
{
    using Scalar = ScalarOf<Ops>;
    if (!(opt.eta > 0.0 && opt.eta < 4.0)) {
        throw ConfigError("eta must lie in (0, 4)");
    }
    const Index n = ops.size_H();
    const Vector<Scalar> z = process.stiffest_state();
    const Vector<Scalar> phi0 = process.phi_sigma_prime(Vector<Scalar>::Zero(ops.size_S()), z);

    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    Vector<Scalar> x(n);
    for (Index i = 0; i < n; ++i) {
        x[i] = static_cast<Scalar>(dist(rng));
    }
    auto m_norm = [&](const Vector<Scalar>& y) { return std::sqrt(ops.inner_H(ops.apply_mass(y), y)); };
    x /= m_norm(x);

    CflEstimate<Scalar> est;
    Scalar older = std::numeric_limits<Scalar>::quiet_NaN();
    Scalar previous = std::numeric_limits<Scalar>::quiet_NaN();
    Scalar quotient = 0;
    for (int it = 1; it <= opt.max_iterations; ++it) {
        const Vector<Scalar> kx = apply_wave_operator(ops, process, z, phi0, x);
        quotient = ops.inner_H(ops.apply_mass(kx), x);
        est.iterations = it;
        const Scalar norm = m_norm(kx);
        if (!(norm > Scalar(0))) {
            est.lambda_max = 0;
            est.tau_max = std::numeric_limits<Scalar>::infinity();
            return est;
        }
        if (std::isfinite(previous) && std::abs(quotient - previous) <= Scalar(opt.tolerance) * std::abs(quotient)) {
            est.lambda_max = quotient;
            est.tau_max = std::sqrt((Scalar(4) - Scalar(opt.eta)) / quotient);
            return est;
        }
        older = previous;
        previous = quotient;
        x = kx / norm;
    }
    throw EstimationError(static_cast<double>(older), static_cast<double>(previous),
                          "power iteration for the CFL bound did not converge in " +
                              std::to_string(opt.max_iterations) + " iterations (last quotients " +
                              std::to_string(static_cast<double>(older)) + ", " +
                              std::to_string(static_cast<double>(previous)) + ")");
}

}  // namespace leapfrog
