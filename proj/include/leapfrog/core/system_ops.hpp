#pragma once

#include "leapfrog/core/dof.hpp"

#include <concepts>

namespace leapfrog {

/// Operations a spatial discretisation supplies to the integrator.
///
/// H is the velocity space, S the (generalised) proto-stress space. E maps H to
/// strain rates in S, C is the elastic operator on S, M the lumped mass on H.
/// The adjoints are taken with respect to inner_H and inner_S, so
/// inner_S(apply_E(v), s) == inner_H(v, apply_E_adjoint(s)).
template <typename Ops>
concept SystemOps = requires(const Ops& ops, const Vector<typename Ops::Scalar>& x) {
    typename Ops::Scalar;
    { ops.size_H() } -> std::convertible_to<Index>;
    { ops.size_S() } -> std::convertible_to<Index>;
    { ops.apply_E(x) } -> std::convertible_to<Vector<typename Ops::Scalar>>;
    { ops.apply_E_adjoint(x) } -> std::convertible_to<Vector<typename Ops::Scalar>>;
    { ops.apply_C(x) } -> std::convertible_to<Vector<typename Ops::Scalar>>;
    { ops.apply_C_adjoint(x) } -> std::convertible_to<Vector<typename Ops::Scalar>>;
    { ops.apply_C_inverse(x) } -> std::convertible_to<Vector<typename Ops::Scalar>>;
    { ops.apply_mass(x) } -> std::convertible_to<Vector<typename Ops::Scalar>>;
    { ops.apply_mass_inverse(x) } -> std::convertible_to<Vector<typename Ops::Scalar>>;
    { ops.inner_H(x, x) } -> std::convertible_to<typename Ops::Scalar>;
    { ops.inner_S(x, x) } -> std::convertible_to<typename Ops::Scalar>;
};

template <SystemOps Ops>
using ScalarOf = typename Ops::Scalar;

}  // namespace leapfrog
