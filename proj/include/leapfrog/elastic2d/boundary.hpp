#pragma once

#include "leapfrog/core/dof.hpp"
#include "leapfrog/core/errors.hpp"
#include "leapfrog/elastic2d/grid.hpp"

#include <Eigen/Eigenvalues>

#include <functional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace leapfrog {

enum class Side { bottom, right, top, left };

inline const char* side_name(Side s)
{
    switch (s) {
    case Side::bottom: return "bottom";
    case Side::right: return "right";
    case Side::top: return "top";
    case Side::left: return "left";
    }
    return "?";
}

/// A boundary edge of length h, numbered along its side (left to right on
/// bottom/top, bottom to top on left/right).
struct SegmentRef {
    Side side = Side::bottom;
    Index index = 0;

    friend bool operator<(const SegmentRef& a, const SegmentRef& b)
    {
        return std::pair(static_cast<int>(a.side), a.index) < std::pair(static_cast<int>(b.side), b.index);
    }
    friend bool operator==(const SegmentRef& a, const SegmentRef& b) = default;
};

template <typename Scalar>
Index segments_on_side(const Grid2D<Scalar>& g, Side s)
{
    return (s == Side::bottom || s == Side::top) ? g.nx : g.ny;
}

/// The boundary cell adjacent to a segment.
template <typename Scalar>
Index boundary_cell(const Grid2D<Scalar>& g, SegmentRef seg)
{
    switch (seg.side) {
    case Side::bottom: return g.cell(seg.index, 0);
    case Side::top: return g.cell(seg.index, g.ny - 1);
    case Side::left: return g.cell(0, seg.index);
    case Side::right: return g.cell(g.nx - 1, seg.index);
    }
    return 0;
}

template <typename Scalar>
Vector2<Scalar> outward_normal(Side s)
{
    switch (s) {
    case Side::bottom: return {0, -1};
    case Side::top: return {0, 1};
    case Side::left: return {-1, 0};
    case Side::right: return {1, 0};
    }
    return {0, 0};
}

template <typename Scalar>
Vector2<Scalar> segment_midpoint(const Grid2D<Scalar>& g, SegmentRef seg)
{
    const Scalar s = (static_cast<Scalar>(seg.index) + Scalar(0.5)) * g.h;
    const Scalar lx = static_cast<Scalar>(g.nx) * g.h;
    const Scalar ly = static_cast<Scalar>(g.ny) * g.h;
    switch (seg.side) {
    case Side::bottom: return g.origin + Vector2<Scalar>(s, 0);
    case Side::top: return g.origin + Vector2<Scalar>(s, ly);
    case Side::left: return g.origin + Vector2<Scalar>(0, s);
    case Side::right: return g.origin + Vector2<Scalar>(lx, s);
    }
    return g.origin;
}

/// Prescribed traction g(t) (force per length) on segments first..last of a side.
template <typename Scalar>
struct TractionPatch {
    Side side = Side::top;
    Index first = 0;
    Index last = -1;  ///< inclusive; negative means the end of the side
    std::function<Vector2<Scalar>(Scalar)> traction;
    /// Optional antiderivative of `traction`, zero at t = 0.
    std::function<Vector2<Scalar>(Scalar)> traction_integral;
};

/// Boundary conditions: adhesive segments glued to a support displacement u_D
/// through the stiffness B, traction patches, and free (zero traction)
/// everywhere else.
template <typename Scalar>
struct BoundarySpec {
    std::vector<SegmentRef> adhesive;
    Matrix2<Scalar> stiffness = Matrix2<Scalar>::Identity() / 2;
    std::function<Vector2<Scalar>(Scalar)> support_displacement;
    std::vector<TractionPatch<Scalar>> tractions;

    void validate(const Grid2D<Scalar>& g) const
    {
        std::set<SegmentRef> used;
        for (const auto& s : adhesive) {
            if (s.index < 0 || s.index >= segments_on_side(g, s.side)) {
                throw ConfigError(std::string("adhesive segment out of range on ") + side_name(s.side));
            }
            if (!used.insert(s).second) {
                throw ConfigError("adhesive segment listed twice");
            }
        }
        for (const auto& p : tractions) {
            if (!p.traction) {
                throw ConfigError("traction patch without a traction function");
            }
            const Index n = segments_on_side(g, p.side);
            const Index last = p.last < 0 ? n - 1 : p.last;
            if (p.first < 0 || last >= n || p.first > last) {
                throw ConfigError(std::string("traction patch out of range on ") + side_name(p.side));
            }
            for (Index i = p.first; i <= last; ++i) {
                if (!used.insert(SegmentRef{p.side, i}).second) {
                    throw ConfigError(std::string("segment ") + std::to_string(i) + " on " + side_name(p.side) +
                                      " has more than one boundary condition");
                }
            }
        }
        if (!adhesive.empty()) {
            if (std::abs(stiffness(0, 1) - stiffness(1, 0)) > Scalar(1e-14) * stiffness.norm()) {
                throw ConfigError("adhesive stiffness must be symmetric");
            }
            Eigen::SelfAdjointEigenSolver<Matrix2<Scalar>> es(stiffness);
            if (!(es.eigenvalues().minCoeff() > Scalar(0))) {
                throw ConfigError("adhesive stiffness must be positive definite");
            }
        }
    }
};

}  // namespace leapfrog
