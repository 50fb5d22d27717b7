#pragma once

#include <Eigen/Core>

#include <cmath>

namespace leapfrog {

using Index = Eigen::Index;

/// Flat coefficient vector of one of the three spaces the scheme works in:
/// velocities (H), proto-stresses and strains (S), internal variables (Z).
/// Which space a vector belongs to is carried by the operation that produced it.
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;

template <typename Scalar>
using Matrix2 = Eigen::Matrix<Scalar, 2, 2>;

/// Symmetric 2x2 tensor stored as (xx, yy, xy).
template <typename Scalar>
using SymTensor2 = Eigen::Matrix<Scalar, 3, 1>;

/// Largest magnitude any field entry may reach before a step is rejected.
inline constexpr double kBlowUpThreshold = 1e12;

template <typename Derived>
bool within_blow_up_bound(const Eigen::MatrixBase<Derived>& x)
{
    for (Index i = 0; i < x.size(); ++i) {
        const auto a = x.coeff(i);
        if (!std::isfinite(a) || std::abs(a) > kBlowUpThreshold) {
            return false;
        }
    }
    return true;
}

}  // namespace leapfrog
