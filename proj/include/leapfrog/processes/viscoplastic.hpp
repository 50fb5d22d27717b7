#pragma once

#include "leapfrog/core/dof.hpp"
#include "leapfrog/core/errors.hpp"
#include "leapfrog/elastic2d/elastic_ops.hpp"
#include "leapfrog/elastic2d/material.hpp"

#include <cmath>
#include <limits>
#include <type_traits>

namespace leapfrog {

/// Yield stress, viscosity D and isotropic hardening modulus c2.
template <typename Scalar>
struct ViscoplasticParams {
    Scalar sigma_y = 0;
    Scalar viscosity = 1;
    Scalar hardening = 0;

    void validate() const
    {
        if (sigma_y < Scalar(0) || viscosity < Scalar(0) || hardening < Scalar(0)) {
            throw ConfigError("viscoplastic parameters must be non-negative");
        }
        if (sigma_y > Scalar(0) && !(viscosity > Scalar(0))) {
            throw ConfigError("a positive yield stress needs a positive viscosity (rate-independent plasticity is not "
                              "supported)");
        }
    }
};

/// Stored energy density 1/2 C^-1 s:s - s:pi + 1/2 (C + c2) pi:pi at one node.
template <typename Scalar>
Scalar viscoplastic_energy_density(const MaterialParams<Scalar>& m, const ViscoplasticParams<Scalar>& p,
                                   const SymTensor2<Scalar>& s, const SymTensor2<Scalar>& pi)
{
    return contract(hooke_inverse(m, s), s) / 2 - contract(s, pi) + contract(hooke(m, pi), pi) / 2 +
           p.hardening * contract(pi, pi) / 2;
}

/// Dissipation density sigma_y |dev r| + 1/2 D r:r; without hardening the rate
/// must be trace-free.
template <typename Scalar>
Scalar viscoplastic_dissipation_density(const ViscoplasticParams<Scalar>& p, const SymTensor2<Scalar>& rate)
{
    if (p.hardening == Scalar(0)) {
        const Scalar tr = rate[0] + rate[1];
        if (std::abs(tr) > Scalar(1e-12) * (Scalar(1) + rate.norm())) {
            return std::numeric_limits<Scalar>::infinity();
        }
    }
    const SymTensor2<Scalar> d = deviator(rate);
    return p.sigma_y * std::sqrt(contract(d, d)) + p.viscosity * contract(rate, rate) / 2;
}

/// Closed-form minimiser of (2/tau) Phi(s, (pi + pi_old)/2) + Psi((pi - pi_old)/tau)
/// at one node: viscous shrinkage of the deviatoric driving stress, plus a
/// purely viscous spherical update when hardening is present.
template <typename Scalar>
SymTensor2<Scalar> viscoplastic_local_flow(const MaterialParams<Scalar>& m, const ViscoplasticParams<Scalar>& p,
                                           const std::type_identity_t<SymTensor2<Scalar>>& s,
                                           const std::type_identity_t<SymTensor2<Scalar>>& pi_old,
                                           std::type_identity_t<Scalar> tau)
{
    const Scalar dev_mod = 2 * m.G + p.hardening;
    const SymTensor2<Scalar> q = deviator(s) - dev_mod * deviator(pi_old);
    const Scalar qn = std::sqrt(contract(q, q));
    SymTensor2<Scalar> rate = SymTensor2<Scalar>::Zero();
    if (qn > p.sigma_y) {
        rate = (qn - p.sigma_y) / (p.viscosity + tau * dev_mod / 2) / qn * q;
    }
    if (p.hardening > Scalar(0)) {
        const Scalar sph_mod = 2 * (m.lambda() + m.G) + p.hardening;
        rate += (spherical(s) - sph_mod * spherical(pi_old)) / (p.viscosity + tau * sph_mod / 2);
    }
    return pi_old + tau * rate;
}

/// Visco-plastic creep with the plastic strain pi at every stress node. Any
/// adhesive segments of the discretisation stay elastic springs.
template <typename Scalar_>
class ViscoplasticProcess {
public:
    using Scalar = Scalar_;

    ViscoplasticProcess(const Elastic2D<Scalar>& ops, ViscoplasticParams<Scalar> params)
        : ops_(&ops), params_(params)
    {
        params_.validate();
    }

    const ViscoplasticParams<Scalar>& params() const { return params_; }

    Index z_size() const { return 3 * ops_->grid().node_count(); }
    Vector<Scalar> initial_state() const { return Vector<Scalar>::Zero(z_size()); }
    Vector<Scalar> stiffest_state() const { return initial_state(); }

    Scalar phi(const Vector<Scalar>& sigma, const Vector<Scalar>& pi) const
    {
        const Vector<Scalar> cpi = ops_->apply_C(extend(pi));
        return ops_->inner_S(ops_->apply_C_inverse(sigma), sigma) / 2 - ops_->inner_nodes(sigma, pi) +
               ops_->inner_nodes(cpi, pi) / 2 + params_.hardening * ops_->inner_nodes(pi, pi) / 2;
    }

    Vector<Scalar> phi_sigma_prime(const Vector<Scalar>& sigma, const Vector<Scalar>& pi) const
    {
        Vector<Scalar> g = ops_->apply_C_inverse(sigma);
        g.head(z_size()) -= pi;
        return g;
    }

    /// Euclidean gradient in the (xx, yy, xy) coefficients of pi.
    Vector<Scalar> phi_z_prime(const Vector<Scalar>& sigma, const Vector<Scalar>& pi) const
    {
        const Vector<Scalar> cpi = ops_->apply_C(extend(pi));
        Vector<Scalar> g(z_size());
        const auto& w = ops_->node_weights();
        for (Index n = 0; n < ops_->grid().node_count(); ++n) {
            for (int c = 0; c < 3; ++c) {
                const Index k = 3 * n + c;
                const Scalar mult = c == 2 ? Scalar(2) : Scalar(1);
                g[k] = w[n] * mult * (-sigma[k] + cpi[k] + params_.hardening * pi[k]);
            }
        }
        return g;
    }

    Scalar psi(const Vector<Scalar>&, const Vector<Scalar>& rate, Scalar) const
    {
        const auto& w = ops_->node_weights();
        Scalar acc = 0;
        for (Index n = 0; n < ops_->grid().node_count(); ++n) {
            acc += w[n] * viscoplastic_dissipation_density(params_, SymTensor2<Scalar>(rate.template segment<3>(3 * n)));
        }
        return acc;
    }

    Vector<Scalar> solve_flow_rule(const Vector<Scalar>& sigma, const Vector<Scalar>& pi_old, Scalar tau) const
    {
        Vector<Scalar> pi(z_size());
        const auto& m = ops_->material();
        for (Index n = 0; n < ops_->grid().node_count(); ++n) {
            pi.template segment<3>(3 * n) =
                viscoplastic_local_flow(m, params_, SymTensor2<Scalar>(sigma.template segment<3>(3 * n)),
                                        SymTensor2<Scalar>(pi_old.template segment<3>(3 * n)), tau);
        }
        return pi;
    }

private:
    Vector<Scalar> extend(const Vector<Scalar>& pi) const
    {
        Vector<Scalar> x = Vector<Scalar>::Zero(ops_->size_S());
        x.head(z_size()) = pi;
        return x;
    }

    const Elastic2D<Scalar>* ops_;
    ViscoplasticParams<Scalar> params_;
};

}  // namespace leapfrog
