#pragma once

#include "leapfrog/core/dof.hpp"
#include "leapfrog/core/errors.hpp"
#include "leapfrog/elastic2d/elastic_ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <type_traits>

namespace leapfrog {

/// How the fracture toughness enters the stored energy.
enum class ToughnessSign {
    threshold,  ///< phi(alpha) = g (1 - alpha): debonding costs g per length
    literal,    ///< phi(alpha) = g alpha
};

template <typename Scalar>
struct AdhesiveParams {
    Scalar toughness = 0;
    Scalar eps1 = 0;
    bool healing = false;
    ToughnessSign sign = ToughnessSign::threshold;

    void validate() const
    {
        if (toughness < Scalar(0) || eps1 < Scalar(0)) {
            throw ConfigError("adhesive toughness and eps1 must be non-negative");
        }
        if (healing && !(eps1 > Scalar(0))) {
            throw ConfigError("healing needs eps1 > 0");
        }
    }
};

/// Driving force dPhi/dalpha per unit length: 1/2 s . B^-1 s -/+ g.
template <typename Scalar>
Scalar adhesive_driving_force(const AdhesiveParams<Scalar>& p, const Matrix2<Scalar>& compliance,
                              const std::type_identity_t<Vector2<Scalar>>& s)
{
    const Scalar elastic = s.dot(compliance * s) / 2;
    return p.sign == ToughnessSign::threshold ? elastic - p.toughness : elastic + p.toughness;
}

/// Closed-form minimiser of the incremental potential for one segment, given
/// its driving force d.
template <typename Scalar>
Scalar adhesive_local_flow(const AdhesiveParams<Scalar>& p, Scalar d, Scalar alpha_old, Scalar tau)
{
    if (d > Scalar(0)) {
        if (p.eps1 == Scalar(0)) {
            return Scalar(0);
        }
        return std::max(alpha_old - tau * d / (2 * p.eps1), Scalar(0));
    }
    if (d < Scalar(0) && p.healing) {
        return std::min(alpha_old - tau * d * p.eps1 / 2, Scalar(1));
    }
    return alpha_old;
}

/// Per-length dissipation eps1 r^2 for r <= 0; r^2/eps1 for r > 0 with
/// healing; +inf otherwise or when alpha_old + tau r leaves [0, 1].
template <typename Scalar>
Scalar adhesive_dissipation_density(const AdhesiveParams<Scalar>& p, Scalar alpha_old, Scalar rate, Scalar tau)
{
    constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
    const Scalar a = alpha_old + tau * rate;
    const Scalar tol = Scalar(1e-12);
    if (a < -tol || a > Scalar(1) + tol) {
        return inf;
    }
    if (rate <= Scalar(0)) {
        return p.eps1 * rate * rate;
    }
    return p.healing ? rate * rate / p.eps1 : inf;
}

/// Adhesive delamination on the boundary segments of an Elastic2D; z holds
/// the bonding fraction alpha in [0, 1] per segment and scales the adhesive
/// spring.
template <typename Scalar_>
class AdhesiveProcess {
public:
    using Scalar = Scalar_;

    AdhesiveProcess(const Elastic2D<Scalar>& ops, AdhesiveParams<Scalar> params) : ops_(&ops), params_(params)
    {
        params_.validate();
    }

    const AdhesiveParams<Scalar>& params() const { return params_; }

    Index z_size() const { return ops_->segment_count(); }
    Vector<Scalar> initial_state() const { return Vector<Scalar>::Ones(z_size()); }
    Vector<Scalar> stiffest_state() const { return initial_state(); }

    Vector2<Scalar> traction(const Vector<Scalar>& sigma, Index s) const
    {
        return sigma.template segment<2>(ops_->segment_offset() + 2 * s);
    }

    Scalar phi(const Vector<Scalar>& sigma, const Vector<Scalar>& alpha) const
    {
        const Vector<Scalar> e = ops_->apply_C_inverse(sigma);
        Scalar surface = 0;
        const Matrix2<Scalar>& comp = ops_->adhesive_compliance();
        for (Index s = 0; s < z_size(); ++s) {
            const Vector2<Scalar> t = traction(sigma, s);
            const Scalar g = params_.sign == ToughnessSign::threshold ? params_.toughness * (Scalar(1) - alpha[s])
                                                                      : params_.toughness * alpha[s];
            surface += alpha[s] * t.dot(comp * t) / 2 + g;
        }
        return ops_->inner_nodes(e, sigma) / 2 + ops_->grid().h * surface;
    }

    Vector<Scalar> phi_sigma_prime(const Vector<Scalar>& sigma, const Vector<Scalar>& alpha) const
    {
        Vector<Scalar> g = ops_->apply_C_inverse(sigma);
        const Index off = ops_->segment_offset();
        for (Index s = 0; s < z_size(); ++s) {
            g.template segment<2>(off + 2 * s) *= alpha[s];
        }
        return g;
    }

    Vector<Scalar> phi_z_prime(const Vector<Scalar>& sigma, const Vector<Scalar>&) const
    {
        Vector<Scalar> g(z_size());
        for (Index s = 0; s < z_size(); ++s) {
            g[s] = ops_->grid().h * adhesive_driving_force(params_, ops_->adhesive_compliance(), traction(sigma, s));
        }
        return g;
    }

    Scalar psi(const Vector<Scalar>& alpha_old, const Vector<Scalar>& rate, Scalar tau) const
    {
        Scalar acc = 0;
        for (Index s = 0; s < z_size(); ++s) {
            acc += adhesive_dissipation_density(params_, alpha_old[s], rate[s], tau);
        }
        return ops_->grid().h * acc;
    }

    Vector<Scalar> solve_flow_rule(const Vector<Scalar>& sigma, const Vector<Scalar>& alpha_old, Scalar tau) const
    {
        Vector<Scalar> alpha(z_size());
        for (Index s = 0; s < z_size(); ++s) {
            const Scalar d = adhesive_driving_force(params_, ops_->adhesive_compliance(), traction(sigma, s));
            alpha[s] = adhesive_local_flow(params_, d, alpha_old[s], tau);
        }
        return alpha;
    }

private:
    const Elastic2D<Scalar>* ops_;
    AdhesiveParams<Scalar> params_;
};

}  // namespace leapfrog
