#pragma once

#include "leapfrog/core/dof.hpp"
#include "leapfrog/core/system_ops.hpp"

namespace leapfrog {

/// Pure elastodynamics: no internal variable, Phi(Sigma) = 1/2 <C^-1 Sigma, Sigma>.
template <SystemOps Ops>
class NullProcess {
public:
    using Scalar = ScalarOf<Ops>;

    explicit NullProcess(const Ops& ops) : ops_(&ops) {}

    Index z_size() const { return 0; }
    Vector<Scalar> initial_state() const { return {}; }
    Vector<Scalar> stiffest_state() const { return {}; }

    Scalar phi(const Vector<Scalar>& sigma, const Vector<Scalar>&) const
    {
        return ops_->inner_S(ops_->apply_C_inverse(sigma), sigma) / 2;
    }
    Vector<Scalar> phi_sigma_prime(const Vector<Scalar>& sigma, const Vector<Scalar>&) const
    {
        return ops_->apply_C_inverse(sigma);
    }
    Vector<Scalar> phi_z_prime(const Vector<Scalar>&, const Vector<Scalar>&) const { return {}; }
    Scalar psi(const Vector<Scalar>&, const Vector<Scalar>&, Scalar) const { return 0; }
    Vector<Scalar> solve_flow_rule(const Vector<Scalar>&, const Vector<Scalar>& z_old, Scalar) const { return z_old; }
    Scalar dissipation_increment(const Vector<Scalar>&, const Vector<Scalar>&, const Vector<Scalar>&, Scalar) const
    {
        return 0;
    }

private:
    const Ops* ops_;
};

}  // namespace leapfrog
