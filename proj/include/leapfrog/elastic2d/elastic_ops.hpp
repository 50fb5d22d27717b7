#pragma once

#include "leapfrog/core/dof.hpp"
#include "leapfrog/core/errors.hpp"
#include "leapfrog/core/load_program.hpp"
#include "leapfrog/elastic2d/boundary.hpp"
#include "leapfrog/elastic2d/grid.hpp"
#include "leapfrog/elastic2d/material.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace leapfrog {

/// Plane-strain elasticity on a rotated staggered grid.
///
/// H: two velocity components per cell, index 2*cell + c.
/// S: (xx, yy, xy) per node, followed by a traction 2-vector per adhesive
/// segment. Nodal derivatives average the four surrounding cells; a missing
/// neighbour across the boundary is replaced by its mirror image, so edge
/// nodes see one-sided tangential differences and no normal difference.
template <typename Scalar_>
class Elastic2D {
public:
    using Scalar = Scalar_;

    Elastic2D(Grid2D<Scalar> grid, MaterialParams<Scalar> material, BoundarySpec<Scalar> boundary = {})
        : grid_(grid), material_(material), boundary_(std::move(boundary))
    {
        grid_.validate();
        material_.validate();
        boundary_.validate(grid_);
        node_weight_.resize(grid_.node_count());
        for (Index j = 0; j <= grid_.ny; ++j) {
            for (Index i = 0; i <= grid_.nx; ++i) {
                node_weight_[grid_.node(i, j)] = grid_.node_weight(i, j);
            }
        }
        for (const auto& s : boundary_.adhesive) {
            adhesive_cell_.push_back(boundary_cell(grid_, s));
        }
        stiffness_inv_ = boundary_.stiffness.inverse();
    }

    const Grid2D<Scalar>& grid() const { return grid_; }
    const MaterialParams<Scalar>& material() const { return material_; }
    const BoundarySpec<Scalar>& boundary() const { return boundary_; }
    const Matrix2<Scalar>& adhesive_stiffness() const { return boundary_.stiffness; }
    const Matrix2<Scalar>& adhesive_compliance() const { return stiffness_inv_; }
    const Vector<Scalar>& node_weights() const { return node_weight_; }
    Index segment_count() const { return static_cast<Index>(adhesive_cell_.size()); }
    Index segment_cell(Index s) const { return adhesive_cell_[static_cast<std::size_t>(s)]; }
    /// Offset of the adhesive block inside an S vector.
    Index segment_offset() const { return 3 * grid_.node_count(); }

    Index size_H() const { return 2 * grid_.cell_count(); }
    Index size_S() const { return 3 * grid_.node_count() + 2 * segment_count(); }

    /// Strain rate: symmetric nodal gradient of v, and -v on adhesive segments.
    Vector<Scalar> apply_E(const Vector<Scalar>& v) const
    {
        check(v, size_H(), "apply_E");
        Vector<Scalar> e(size_S());
        const Index nx = grid_.nx;
        const Index ny = grid_.ny;
        const Scalar c = Scalar(1) / (2 * grid_.h);
        for (Index j = 0; j <= ny; ++j) {
            const Index ja = std::max<Index>(j - 1, 0);
            const Index jb = std::min<Index>(j, ny - 1);
            for (Index i = 0; i <= nx; ++i) {
                const Index ia = std::max<Index>(i - 1, 0);
                const Index ib = std::min<Index>(i, nx - 1);
                const Index aa = 2 * (ja * nx + ia);
                const Index ba = 2 * (ja * nx + ib);
                const Index ab = 2 * (jb * nx + ia);
                const Index bb = 2 * (jb * nx + ib);
                const Scalar dxu = c * ((v[bb] + v[ba]) - (v[ab] + v[aa]));
                const Scalar dyu = c * ((v[bb] + v[ab]) - (v[ba] + v[aa]));
                const Scalar dxv = c * ((v[bb + 1] + v[ba + 1]) - (v[ab + 1] + v[aa + 1]));
                const Scalar dyv = c * ((v[bb + 1] + v[ab + 1]) - (v[ba + 1] + v[aa + 1]));
                const Index n = 3 * (j * (nx + 1) + i);
                e[n] = dxu;
                e[n + 1] = dyv;
                e[n + 2] = Scalar(0.5) * (dyu + dxv);
            }
        }
        const Index off = segment_offset();
        for (Index s = 0; s < segment_count(); ++s) {
            const Index cell = adhesive_cell_[static_cast<std::size_t>(s)];
            e[off + 2 * s] = -v[2 * cell];
            e[off + 2 * s + 1] = -v[2 * cell + 1];
        }
        return e;
    }

    /// Exact adjoint of apply_E with respect to inner_S and inner_H.
    Vector<Scalar> apply_E_adjoint(const Vector<Scalar>& s) const
    {
        check(s, size_S(), "apply_E_adjoint");
        Vector<Scalar> f = Vector<Scalar>::Zero(size_H());
        const Index nx = grid_.nx;
        const Index ny = grid_.ny;
        const Scalar c = Scalar(1) / (2 * grid_.h);
        const Scalar inv_h2 = Scalar(1) / (grid_.h * grid_.h);
        for (Index j = 0; j <= ny; ++j) {
            const Index ja = std::max<Index>(j - 1, 0);
            const Index jb = std::min<Index>(j, ny - 1);
            for (Index i = 0; i <= nx; ++i) {
                const Index ia = std::max<Index>(i - 1, 0);
                const Index ib = std::min<Index>(i, nx - 1);
                const Index node = j * (nx + 1) + i;
                const Scalar w = node_weight_[node] * inv_h2 * c;
                const Scalar sxx = w * s[3 * node];
                const Scalar syy = w * s[3 * node + 1];
                const Scalar sxy = w * s[3 * node + 2];
                // d/dx carries + on the b column, d/dy + on the b row.
                const Index bb = 2 * (jb * nx + ib);
                f[bb] += sxx + sxy;
                f[bb + 1] += sxy + syy;
                const Index ba = 2 * (ja * nx + ib);
                f[ba] += sxx - sxy;
                f[ba + 1] += sxy - syy;
                const Index ab = 2 * (jb * nx + ia);
                f[ab] += -sxx + sxy;
                f[ab + 1] += -sxy + syy;
                const Index aa = 2 * (ja * nx + ia);
                f[aa] += -sxx - sxy;
                f[aa + 1] += -sxy - syy;
            }
        }
        const Index off = segment_offset();
        const Scalar inv_h = Scalar(1) / grid_.h;
        for (Index seg = 0; seg < segment_count(); ++seg) {
            const Index cell = adhesive_cell_[static_cast<std::size_t>(seg)];
            f[2 * cell] -= inv_h * s[off + 2 * seg];
            f[2 * cell + 1] -= inv_h * s[off + 2 * seg + 1];
        }
        return f;
    }

    /// Hooke's law at the nodes, B on the adhesive segments.
    Vector<Scalar> apply_C(const Vector<Scalar>& e) const
    {
        check(e, size_S(), "apply_C");
        Vector<Scalar> s(size_S());
        for (Index n = 0; n < grid_.node_count(); ++n) {
            s.template segment<3>(3 * n) = hooke(material_, SymTensor2<Scalar>(e.template segment<3>(3 * n)));
        }
        const Index off = segment_offset();
        for (Index seg = 0; seg < segment_count(); ++seg) {
            s.template segment<2>(off + 2 * seg) = boundary_.stiffness * e.template segment<2>(off + 2 * seg);
        }
        return s;
    }

    /// C is self-adjoint for inner_S.
    Vector<Scalar> apply_C_adjoint(const Vector<Scalar>& s) const { return apply_C(s); }

    Vector<Scalar> apply_C_inverse(const Vector<Scalar>& s) const
    {
        check(s, size_S(), "apply_C_inverse");
        Vector<Scalar> e(size_S());
        for (Index n = 0; n < grid_.node_count(); ++n) {
            e.template segment<3>(3 * n) = hooke_inverse(material_, SymTensor2<Scalar>(s.template segment<3>(3 * n)));
        }
        const Index off = segment_offset();
        for (Index seg = 0; seg < segment_count(); ++seg) {
            e.template segment<2>(off + 2 * seg) = stiffness_inv_ * s.template segment<2>(off + 2 * seg);
        }
        return e;
    }

    Vector<Scalar> apply_mass(const Vector<Scalar>& v) const { return material_.rho * v; }
    Vector<Scalar> apply_mass_inverse(const Vector<Scalar>& f) const { return f / material_.rho; }

    /// h^2 sum over cells of a . b
    Scalar inner_H(const Vector<Scalar>& a, const Vector<Scalar>& b) const
    {
        return grid_.h * grid_.h * a.dot(b);
    }

    /// Nodal quadrature of a : b plus h sum over adhesive segments of a . b
    Scalar inner_S(const Vector<Scalar>& a, const Vector<Scalar>& b) const
    {
        return inner_nodes(a, b) + grid_.h * adhesive_dot(a, b);
    }

    /// Quadrature of a : b over the nodal part only. Works on any vector whose
    /// leading 3*node_count entries are nodal tensors.
    Scalar inner_nodes(const Vector<Scalar>& a, const Vector<Scalar>& b) const
    {
        Scalar acc = 0;
        for (Index n = 0; n < grid_.node_count(); ++n) {
            const Index k = 3 * n;
            acc += node_weight_[n] * (a[k] * b[k] + a[k + 1] * b[k + 1] + 2 * a[k + 2] * b[k + 2]);
        }
        return acc;
    }

    Scalar adhesive_dot(const Vector<Scalar>& a, const Vector<Scalar>& b) const
    {
        const Index off = segment_offset();
        const Index m = 2 * segment_count();
        return m ? a.segment(off, m).dot(b.segment(off, m)) : Scalar(0);
    }

    Vector2<Scalar> cell_velocity(const Vector<Scalar>& v, Index cell) const { return v.template segment<2>(2 * cell); }

private:
    static void check(const Vector<Scalar>& x, Index n, const char* what)
    {
        if (x.size() != n) {
            throw ConfigError(std::string(what) + ": size " + std::to_string(x.size()) + ", expected " +
                              std::to_string(n));
        }
    }

    Grid2D<Scalar> grid_;
    MaterialParams<Scalar> material_;
    BoundarySpec<Scalar> boundary_;
    Vector<Scalar> node_weight_;
    std::vector<Index> adhesive_cell_;
    Matrix2<Scalar> stiffness_inv_;
};

/// Traction patches become a surface force g/h on the adjacent cell; the
/// adhesive support displacement u_D enters the S block as B u_D.
template <typename Scalar>
LoadProgram<Scalar> make_load_program(const Elastic2D<Scalar>& ops, Scalar horizon)
{
    LoadProgram<Scalar> p;
    p.horizon = horizon;
    const auto& bc = ops.boundary();
    const Grid2D<Scalar>& g = ops.grid();

    struct Target {
        Index cell;
        std::size_t patch;
    };
    std::vector<Target> targets;
    bool integrable = true;
    for (std::size_t k = 0; k < bc.tractions.size(); ++k) {
        const auto& patch = bc.tractions[k];
        const Index last = patch.last < 0 ? segments_on_side(g, patch.side) - 1 : patch.last;
        for (Index i = patch.first; i <= last; ++i) {
            targets.push_back({boundary_cell(g, SegmentRef{patch.side, i}), k});
        }
        integrable = integrable && static_cast<bool>(patch.traction_integral);
    }

    if (!targets.empty()) {
        const Index n = ops.size_H();
        const Scalar inv_h = Scalar(1) / g.h;
        auto assemble = [bc, targets, n, inv_h](Scalar t, bool integral) {
            Vector<Scalar> f = Vector<Scalar>::Zero(n);
            std::vector<Vector2<Scalar>> value(bc.tractions.size());
            for (std::size_t k = 0; k < bc.tractions.size(); ++k) {
                value[k] = integral ? bc.tractions[k].traction_integral(t) : bc.tractions[k].traction(t);
            }
            for (const auto& tg : targets) {
                f.template segment<2>(2 * tg.cell) += inv_h * value[tg.patch];
            }
            return f;
        };
        p.force = [assemble](Scalar t) { return assemble(t, false); };
        if (integrable) {
            p.force_integral = [assemble](Scalar t) { return assemble(t, true); };
        }
        p.force_time_varying = true;
    }

    if (bc.support_displacement && ops.segment_count() > 0) {
        const Index n = ops.size_S();
        const Index off = ops.segment_offset();
        const Index m = ops.segment_count();
        const Matrix2<Scalar> b = ops.adhesive_stiffness();
        auto ud = bc.support_displacement;
        p.stress_load = [n, off, m, b, ud](Scalar t) {
            Vector<Scalar> s = Vector<Scalar>::Zero(n);
            const Vector2<Scalar> val = b * ud(t);
            for (Index seg = 0; seg < m; ++seg) {
                s.template segment<2>(off + 2 * seg) = val;
            }
            return s;
        };
    }
    return p;
}

/// Rate of the adhesive proto-stress: B (du_D/dt - v_trace) per segment, the
/// trace being the adjacent boundary cell's velocity.
template <typename Scalar>
Vector<Scalar> adhesive_proto_stress_rate(const Elastic2D<Scalar>& ops, const Vector<Scalar>& v,
                                          const Vector2<Scalar>& support_velocity = Vector2<Scalar>::Zero())
{
    Vector<Scalar> r(2 * ops.segment_count());
    for (Index s = 0; s < ops.segment_count(); ++s) {
        r.template segment<2>(2 * s) =
            ops.adhesive_stiffness() * (support_velocity - ops.cell_velocity(v, ops.segment_cell(s)));
    }
    return r;
}

template <typename Scalar>
struct HelmholtzFields {
    Vector<Scalar> div;  ///< per node
    Vector<Scalar> rot;  ///< per node
};

/// div v and rot v = dvy/dx - dvx/dy at the nodes, with the apply_E stencil.
template <typename Scalar>
HelmholtzFields<Scalar> helmholtz(const Elastic2D<Scalar>& ops, const Vector<Scalar>& v)
{
    const Vector<Scalar> e = ops.apply_E(v);
    const auto& g = ops.grid();
    const Index nx = g.nx;
    const Index ny = g.ny;
    const Scalar c = Scalar(1) / (2 * g.h);
    HelmholtzFields<Scalar> out{Vector<Scalar>(g.node_count()), Vector<Scalar>(g.node_count())};
    for (Index j = 0; j <= ny; ++j) {
        const Index ja = std::max<Index>(j - 1, 0);
        const Index jb = std::min<Index>(j, ny - 1);
        for (Index i = 0; i <= nx; ++i) {
            const Index ia = std::max<Index>(i - 1, 0);
            const Index ib = std::min<Index>(i, nx - 1);
            const Index n = g.node(i, j);
            const Index aa = 2 * (ja * nx + ia);
            const Index ba = 2 * (ja * nx + ib);
            const Index ab = 2 * (jb * nx + ia);
            const Index bb = 2 * (jb * nx + ib);
            const Scalar dyu = c * ((v[bb] + v[ab]) - (v[ba] + v[aa]));
            const Scalar dxv = c * ((v[bb + 1] + v[ba + 1]) - (v[ab + 1] + v[aa + 1]));
            out.div[n] = e[3 * n] + e[3 * n + 1];
            out.rot[n] = dxv - dyu;
        }
    }
    return out;
}

/// Velocity at each node: mean of the four surrounding (mirrored) cells.
template <typename Scalar>
Vector<Scalar> node_velocity(const Elastic2D<Scalar>& ops, const Vector<Scalar>& v)
{
    const auto& g = ops.grid();
    Vector<Scalar> out(2 * g.node_count());
    for (Index j = 0; j <= g.ny; ++j) {
        const Index ja = std::max<Index>(j - 1, 0);
        const Index jb = std::min<Index>(j, g.ny - 1);
        for (Index i = 0; i <= g.nx; ++i) {
            const Index ia = std::max<Index>(i - 1, 0);
            const Index ib = std::min<Index>(i, g.nx - 1);
            out.template segment<2>(2 * g.node(i, j)) =
                (ops.cell_velocity(v, g.cell(ia, ja)) + ops.cell_velocity(v, g.cell(ib, ja)) +
                 ops.cell_velocity(v, g.cell(ia, jb)) + ops.cell_velocity(v, g.cell(ib, jb))) /
                4;
        }
    }
    return out;
}

/// Sample a vector field at the cell centres.
template <typename Scalar, typename F>
Vector<Scalar> sample_cells(const Grid2D<Scalar>& g, F&& field)
{
    Vector<Scalar> v(2 * g.cell_count());
    for (Index j = 0; j < g.ny; ++j) {
        for (Index i = 0; i < g.nx; ++i) {
            v.template segment<2>(2 * g.cell(i, j)) = field(g.cell_center(i, j));
        }
    }
    return v;
}

/// Total linear momentum rho h^2 sum v.
template <typename Scalar>
Vector2<Scalar> momentum(const Elastic2D<Scalar>& ops, const Vector<Scalar>& v)
{
    Vector2<Scalar> p = Vector2<Scalar>::Zero();
    for (Index c = 0; c < ops.grid().cell_count(); ++c) {
        p += ops.cell_velocity(v, c);
    }
    return ops.material().rho * ops.grid().h * ops.grid().h * p;
}

}  // namespace leapfrog
