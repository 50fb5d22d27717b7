#include "leapfrog/core/integrator.hpp"
#include "leapfrog/elastic2d/elastic_ops.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace leapfrog;
using Vec = Vector<double>;

namespace {

Elastic2D<double> make_ops(Index nx, Index ny, double h, BoundarySpec<double> bc = {})
{
    return Elastic2D<double>(Grid2D<double>(nx, ny, h), MaterialParams<double>{1.66, 1.0, 1.0}, std::move(bc));
}

BoundarySpec<double> band(Index first, Index count)
{
    BoundarySpec<double> bc;
    for (Index i = first; i < first + count; ++i) {
        bc.adhesive.push_back({Side::bottom, i});
    }
    return bc;
}

bool interior_node(const Grid2D<double>& g, Index i, Index j) { return i > 0 && j > 0 && i < g.nx && j < g.ny; }

}  // namespace

TEST_CASE("grid layout and quadrature weights")
{
    const Grid2D<double> g(5, 3, 0.5);
    CHECK(g.cell_count() == 15);
    CHECK(g.node_count() == 24);
    double area = 0;
    for (Index j = 0; j <= g.ny; ++j) {
        for (Index i = 0; i <= g.nx; ++i) {
            area += g.node_weight(i, j);
        }
    }
    CHECK(area == doctest::Approx(2.5 * 1.5));
    CHECK(g.node_weight(0, 0) == doctest::Approx(0.0625));
    CHECK(g.node_weight(2, 0) == doctest::Approx(0.125));
    CHECK_THROWS_AS(Grid2D<double>(1, 4, 1.0), ConfigError);
}

TEST_CASE("wave speeds")
{
    auto [vp, vs] = wave_speeds(MaterialParams<double>{1.66, 1.0, 1.0});
    CHECK(vp == doctest::Approx(1.7321).epsilon(1e-3));
    CHECK(vs == doctest::Approx(1.0));
    auto [vp0, vs0] = wave_speeds(MaterialParams<double>{1.66, 0.0, 1.0});
    CHECK(vs0 == 0.0);
    CHECK(vp0 == doctest::Approx(std::sqrt(1.66)));
    auto [vp4, vs4] = wave_speeds(MaterialParams<double>{1.66, 1.0, 4.0});
    CHECK(vp4 == doctest::Approx(vp / 2));
    CHECK(vs4 == doctest::Approx(vs / 2));
}

TEST_CASE("apply_C")
{
    const MaterialParams<double> m{1.66, 1.0, 1.0};
    const SymTensor2<double> s = hooke(m, SymTensor2<double>(1, 1, 0));
    CHECK(s[0] == doctest::Approx(3.98667).epsilon(1e-5));
    CHECK(s[1] == doctest::Approx(2 * (1.66 - 2.0 / 3.0) + 2));
    CHECK(s[2] == 0.0);
    CHECK(hooke(m, SymTensor2<double>(0, 0, 0.25))[2] == doctest::Approx(0.5));
    CHECK(hooke(m, SymTensor2<double>::Zero()).isZero());

    std::mt19937_64 rng(3);
    auto ops = make_ops(4, 3, 0.7, band(1, 2));
    for (int rep = 0; rep < 20; ++rep) {
        const Vec e = oracle::random_vector(rng, ops.size_S());
        CHECK(ops.inner_S(ops.apply_C(e), e) > 0);
        CHECK((ops.apply_C_inverse(ops.apply_C(e)) - e).norm() < 1e-12 * e.norm());
        const Vec f = oracle::random_vector(rng, ops.size_S());
        CHECK(std::abs(ops.inner_S(ops.apply_C(e), f) - ops.inner_S(e, ops.apply_C(f))) < 1e-12 * e.norm() * f.norm());
    }
}

TEST_CASE("apply_E on rigid and affine fields")
{
    auto ops = make_ops(6, 5, 0.3, band(2, 2));
    const auto& g = ops.grid();
    const Vec vc = sample_cells(g, [](const Vector2<double>&) { return Vector2<double>(0.7, -1.3); });
    const Vec e = ops.apply_E(vc);
    CHECK(e.head(ops.segment_offset()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK(e[ops.segment_offset()] == doctest::Approx(-0.7));
    CHECK(e[ops.segment_offset() + 1] == doctest::Approx(1.3));

    const Vec vl = sample_cells(g, [](const Vector2<double>& x) { return Vector2<double>(x[0], 0.0); });
    const Vec el = ops.apply_E(vl);
    for (Index j = 0; j <= g.ny; ++j) {
        for (Index i = 0; i <= g.nx; ++i) {
            if (!interior_node(g, i, j)) {
                continue;
            }
            const Index n = 3 * g.node(i, j);
            CHECK(el[n] == doctest::Approx(1.0).epsilon(1e-13));
            CHECK(std::abs(el[n + 1]) < 1e-13);
            CHECK(std::abs(el[n + 2]) < 1e-13);
        }
    }
}

TEST_CASE("apply_E stencil of a single cell")
{
    const double h = 1.0;
    auto ops = make_ops(4, 4, h);
    const auto& g = ops.grid();
    Vec v = Vec::Zero(ops.size_H());
    v[2 * g.cell(1, 2)] = 1.0;
    const Vec e = ops.apply_E(v);
    const double c = 1.0 / (2 * h);
    auto at = [&](Index i, Index j) { return SymTensor2<double>(e.segment<3>(3 * g.node(i, j))); };
    CHECK((at(1, 2) - SymTensor2<double>(c, 0, c / 2)).norm() < 1e-15);
    CHECK((at(2, 2) - SymTensor2<double>(-c, 0, c / 2)).norm() < 1e-15);
    CHECK((at(1, 3) - SymTensor2<double>(c, 0, -c / 2)).norm() < 1e-15);
    CHECK((at(2, 3) - SymTensor2<double>(-c, 0, -c / 2)).norm() < 1e-15);
    double rest = 0;
    for (Index j = 0; j <= g.ny; ++j) {
        for (Index i = 0; i <= g.nx; ++i) {
            if ((i == 1 || i == 2) && (j == 2 || j == 3)) {
                continue;
            }
            rest += at(i, j).norm();
        }
    }
    CHECK(rest == 0.0);

    // The half step feeds the same stencil through Hooke's law.
    const double tau = 0.1;
    const Vec s = init_half_step(Vec::Zero(ops.size_S()), v, tau, ops);
    const SymTensor2<double> expect = tau / 2 * hooke(ops.material(), SymTensor2<double>(c, 0, c / 2));
    CHECK((SymTensor2<double>(s.segment<3>(3 * g.node(1, 2))) - expect).norm() < 1e-15);
}

TEST_CASE("apply_E_adjoint is the exact adjoint")
{
    std::mt19937_64 rng(11);
    for (const auto& [nx, ny] : {std::pair<Index, Index>{4, 4}, {7, 3}, {2, 5}}) {
        auto ops = make_ops(nx, ny, 0.37, band(0, 2));
        double worst = 0;
        for (int rep = 0; rep < 100; ++rep) {
            const Vec v = oracle::random_vector(rng, ops.size_H());
            const Vec s = oracle::random_vector(rng, ops.size_S());
            const double lhs = ops.inner_S(ops.apply_E(v), s);
            const double rhs = ops.inner_H(v, ops.apply_E_adjoint(s));
            worst = std::max(worst, std::abs(lhs - rhs) / (v.norm() * s.norm()));
        }
        CHECK(worst < 1e-12);
    }
}

TEST_CASE("apply_E_adjoint of zero and of a hydrostatic stress")
{
    auto ops = make_ops(6, 5, 0.5);
    const auto& g = ops.grid();
    CHECK(ops.apply_E_adjoint(Vec::Zero(ops.size_S())).isZero());

    const double p = 2.5;
    Vec s = Vec::Zero(ops.size_S());
    for (Index n = 0; n < g.node_count(); ++n) {
        s[3 * n] = p;
        s[3 * n + 1] = p;
    }
    const Vec f = ops.apply_E_adjoint(s);
    Vector2<double> total = Vector2<double>::Zero();
    for (Index j = 0; j < g.ny; ++j) {
        for (Index i = 0; i < g.nx; ++i) {
            const Vector2<double> fc = f.segment<2>(2 * g.cell(i, j));
            total += g.h * g.h * fc;
            const bool edge_i = i == 0 || i == g.nx - 1;
            const bool edge_j = j == 0 || j == g.ny - 1;
            if (!edge_i && !edge_j) {
                CHECK(fc.norm() < 1e-13);
            } else if (j == 0 && !edge_i) {
                // Unbalanced surface term p n h spread over the cell area.
                CHECK(fc[0] == doctest::Approx(0.0));
                CHECK(fc[1] == doctest::Approx(-p / g.h));
            }
        }
    }
    CHECK(total.norm() < 1e-12);
}

TEST_CASE("E* of any stress has zero resultant on a free body")
{
    std::mt19937_64 rng(5);
    auto ops = make_ops(5, 7, 0.2);
    for (int rep = 0; rep < 10; ++rep) {
        const Vec s = oracle::random_vector(rng, ops.size_S());
        const Vec f = ops.apply_E_adjoint(s);
        CHECK(momentum(ops, f).norm() < 1e-12 * s.norm());
    }
}

TEST_CASE("helmholtz decomposition of affine fields")
{
    auto ops = make_ops(6, 6, 0.25);
    const auto& g = ops.grid();
    const Vec v1 = sample_cells(g, [](const Vector2<double>& x) { return Vector2<double>(x[0], x[1]); });
    const Vec v2 = sample_cells(g, [](const Vector2<double>& x) { return Vector2<double>(-x[1], x[0]); });
    const auto h1 = helmholtz(ops, v1);
    const auto h2 = helmholtz(ops, v2);
    for (Index j = 1; j < g.ny; ++j) {
        for (Index i = 1; i < g.nx; ++i) {
            const Index n = g.node(i, j);
            CHECK(h1.div[n] == doctest::Approx(2.0));
            CHECK(std::abs(h1.rot[n]) < 1e-13);
            CHECK(std::abs(h2.div[n]) < 1e-13);
            CHECK(h2.rot[n] == doctest::Approx(2.0));
        }
    }
}

TEST_CASE("adhesive proto-stress rate")
{
    auto ops = make_ops(4, 4, 1.0, band(1, 2));
    Vec v = Vec::Zero(ops.size_H());
    CHECK(adhesive_proto_stress_rate(ops, v).isZero());
    v[2 * ops.segment_cell(0) + 1] = 1.0;
    const Vec r = adhesive_proto_stress_rate(ops, v);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == doctest::Approx(-0.5));
    // Same as the segment block of C E v.
    const Vec ce = ops.apply_C(ops.apply_E(v));
    CHECK((ce.segment(ops.segment_offset(), 4) - r).norm() < 1e-15);
}

TEST_CASE("boundary specification validation")
{
    BoundarySpec<double> bc = band(3, 2);
    TractionPatch<double> top;
    top.side = Side::top;
    top.traction = [](double) { return Vector2<double>(0, 1); };
    bc.tractions.push_back(top);
    CHECK_NOTHROW(make_ops(6, 6, 1.0, bc));

    TractionPatch<double> clash;
    clash.side = Side::bottom;
    clash.first = 4;
    clash.last = 5;
    clash.traction = top.traction;
    bc.tractions.push_back(clash);
    CHECK_THROWS_AS(make_ops(6, 6, 1.0, bc), ConfigError);

    BoundarySpec<double> out = band(5, 3);
    CHECK_THROWS_AS(make_ops(6, 6, 1.0, out), ConfigError);

    BoundarySpec<double> soft = band(0, 1);
    soft.stiffness << 1, 0, 0, -1;
    CHECK_THROWS_AS(make_ops(6, 6, 1.0, soft), ConfigError);
}

TEST_CASE("traction patches become cell forces")
{
    BoundarySpec<double> bc;
    TractionPatch<double> top;
    top.side = Side::top;
    top.first = 1;
    top.last = 2;
    top.traction = [](double t) { return Vector2<double>(0.5 * t, 2.0 * t); };
    top.traction_integral = [](double t) { return Vector2<double>(0.25 * t * t, t * t); };
    bc.tractions.push_back(top);
    auto ops = make_ops(4, 3, 0.5, bc);
    const auto prog = make_load_program(ops, 10.0);
    CHECK(prog.force_time_varying);
    const Vec f = average_load_F(prog, ops.size_H(), 0, 1.0);
    const auto& g = ops.grid();
    CHECK(f[2 * g.cell(1, 2)] == doctest::Approx(0.25 / 0.5));
    CHECK(f[2 * g.cell(2, 2) + 1] == doctest::Approx(1.0 / 0.5));
    CHECK(f[2 * g.cell(0, 2) + 1] == 0.0);
    CHECK(f[2 * g.cell(1, 1) + 1] == 0.0);
    // Total force equals traction times loaded length.
    CHECK(momentum(ops, f)[1] / ops.material().rho == doctest::Approx(2 * 1.0 * 0.5));
}
