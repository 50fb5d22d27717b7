#pragma once

#include "leapfrog/core/dof.hpp"
#include "leapfrog/core/errors.hpp"

#include <cmath>
#include <type_traits>
#include <utility>

namespace leapfrog {

/// Isotropic plane-strain material: bulk modulus K, shear modulus G, density rho.
template <typename Scalar>
struct MaterialParams {
    Scalar K = 1;
    Scalar G = 1;
    Scalar rho = 1;

    void validate() const
    {
        if (!(K > Scalar(0)) || !(G > Scalar(0)) || !(rho > Scalar(0))) {
            throw ConfigError("material needs K > 0, G > 0, rho > 0");
        }
        if (!(lambda() + G > Scalar(0))) {
            throw ConfigError("material is not positive definite in plane strain (lambda + G <= 0)");
        }
    }

    /// 3D Lame constant, used as the plane-strain lambda.
    Scalar lambda() const { return K - Scalar(2) * G / Scalar(3); }
};

/// (v_p, v_s) = (sqrt((K + 4G/3)/rho), sqrt(G/rho)).
template <typename Scalar>
std::pair<Scalar, Scalar> wave_speeds(const MaterialParams<Scalar>& m)
{
    return {std::sqrt((m.K + Scalar(4) * m.G / Scalar(3)) / m.rho), std::sqrt(m.G / m.rho)};
}

/// sigma = lambda tr(e) I + 2 G e on a (xx, yy, xy) tensor.
template <typename Scalar>
SymTensor2<Scalar> hooke(const MaterialParams<Scalar>& m, const std::type_identity_t<SymTensor2<Scalar>>& e)
{
    const Scalar lt = m.lambda() * (e[0] + e[1]);
    return {lt + 2 * m.G * e[0], lt + 2 * m.G * e[1], 2 * m.G * e[2]};
}

template <typename Scalar>
SymTensor2<Scalar> hooke_inverse(const MaterialParams<Scalar>& m, const std::type_identity_t<SymTensor2<Scalar>>& s)
{
    const Scalar tr_e = (s[0] + s[1]) / (2 * (m.lambda() + m.G));
    const Scalar lt = m.lambda() * tr_e;
    return {(s[0] - lt) / (2 * m.G), (s[1] - lt) / (2 * m.G), s[2] / (2 * m.G)};
}

/// a : b with the off-diagonal counted twice.
template <typename Scalar>
Scalar contract(const SymTensor2<Scalar>& a, const SymTensor2<Scalar>& b)
{
    return a[0] * b[0] + a[1] * b[1] + 2 * a[2] * b[2];
}

template <typename Scalar>
SymTensor2<Scalar> deviator(const SymTensor2<Scalar>& a)
{
    const Scalar m = (a[0] + a[1]) / 2;
    return {a[0] - m, a[1] - m, a[2]};
}

template <typename Scalar>
SymTensor2<Scalar> spherical(const SymTensor2<Scalar>& a)
{
    const Scalar m = (a[0] + a[1]) / 2;
    return {m, m, Scalar(0)};
}

}  // namespace leapfrog
