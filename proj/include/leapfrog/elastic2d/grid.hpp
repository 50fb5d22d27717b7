#pragma once

#include "leapfrog/core/dof.hpp"
#include "leapfrog/core/errors.hpp"

#include <string>

namespace leapfrog {

/// Uniform grid of nx by ny square cells of size h. Velocities live at cell
/// centres, stresses at the (nx+1) by (ny+1) nodes.
template <typename Scalar>
struct Grid2D {
    Index nx = 2;
    Index ny = 2;
    Scalar h = 1;
    Vector2<Scalar> origin = Vector2<Scalar>::Zero();

    Grid2D() = default;
    Grid2D(Index nx_, Index ny_, Scalar h_, Vector2<Scalar> origin_ = Vector2<Scalar>::Zero())
        : nx(nx_), ny(ny_), h(h_), origin(origin_)
    {
        validate();
    }

    void validate() const
    {
        if (nx < 2 || ny < 2) {
            throw ConfigError("grid needs at least 2x2 cells, got " + std::to_string(nx) + "x" + std::to_string(ny));
        }
        if (!(h > Scalar(0))) {
            throw ConfigError("mesh size must be positive");
        }
    }

    Index cell_count() const { return nx * ny; }
    Index node_count() const { return (nx + 1) * (ny + 1); }
    Index cell(Index i, Index j) const { return j * nx + i; }
    Index node(Index i, Index j) const { return j * (nx + 1) + i; }

    Vector2<Scalar> cell_center(Index i, Index j) const
    {
        return origin + h * Vector2<Scalar>(static_cast<Scalar>(i) + Scalar(0.5), static_cast<Scalar>(j) + Scalar(0.5));
    }
    Vector2<Scalar> node_position(Index i, Index j) const
    {
        return origin + h * Vector2<Scalar>(static_cast<Scalar>(i), static_cast<Scalar>(j));
    }

    /// Quadrature weight of a node: h^2 inside, halved on edges, quartered at corners.
    Scalar node_weight(Index i, Index j) const
    {
        const Scalar wx = (i == 0 || i == nx) ? Scalar(0.5) : Scalar(1);
        const Scalar wy = (j == 0 || j == ny) ? Scalar(0.5) : Scalar(1);
        return h * h * wx * wy;
    }
};

}  // namespace leapfrog
