#include "leapfrog/core/load_program.hpp"

#include <doctest.h>

#include <cmath>

using namespace leapfrog;
using Vec = Vector<double>;

TEST_CASE("average_load_F of a zero program is zero")
{
    LoadProgram<double> p;
    CHECK(average_load_F(p, 5, 3, 0.1).isZero());
}

TEST_CASE("average_load_F of a ramp is its midpoint value")
{
    LoadProgram<double> p;
    p.force = [](double t) { return Vec::Constant(4, 2.0 * t); };
    const Vec f = average_load_F(p, 4, 0, 1.0);
    for (Index i = 0; i < 4; ++i) {
        CHECK(f[i] == doctest::Approx(1.0).epsilon(1e-15));
    }
    const Vec f7 = average_load_F(p, 4, 7, 0.25);
    CHECK(f7[0] == doctest::Approx(2.0 * 7.5 * 0.25).epsilon(1e-14));
}

TEST_CASE("average_load_F with a jump inside the step matches fine quadrature")
{
    const double tau = 0.3;
    const std::int64_t k = 5;
    const double jump = k * tau + tau / 3;
    const double lo = -1.5;
    const double hi = 4.0;
    LoadProgram<double> p;
    p.force = [=](double t) { return Vec::Constant(2, t < jump ? lo : hi); };
    p.force_integral = [=](double t) {
        return Vec::Constant(2, t < jump ? lo * t : lo * jump + hi * (t - jump));
    };
    const Vec f = average_load_F(p, 2, k, tau);
    CHECK(f[0] == doctest::Approx(lo / 3 + 2 * hi / 3).epsilon(1e-13));

    // 10^4-point midpoint quadrature of the same integrand.
    const int n = 10000;
    double acc = 0;
    for (int q = 0; q < n; ++q) {
        const double t = k * tau + (q + 0.5) * tau / n;
        acc += t < jump ? lo : hi;
    }
    CHECK(std::abs(f[1] - acc / n) < 1e-3);

    // Without the antiderivative the composite midpoint rule is used.
    p.force_integral = nullptr;
    p.quadrature_points = n;
    CHECK(std::abs(average_load_F(p, 2, k, tau)[0] - acc / n) < 1e-12);
}

TEST_CASE("average_load_F clamps past the horizon")
{
    LoadProgram<double> p;
    p.horizon = 1.0;
    p.force = [](double t) { return Vec::Constant(1, t); };
    p.force_integral = [](double t) { return Vec::Constant(1, t * t / 2); };
    CHECK(average_load_F(p, 1, 4, 0.5)[0] == doctest::Approx(1.0));
    p.force_integral = nullptr;
    CHECK(average_load_F(p, 1, 4, 0.5)[0] == doctest::Approx(1.0));
}

TEST_CASE("difference_load_G")
{
    LoadProgram<double> p;
    CHECK(difference_load_G(p, 3, 2, 0.1).isZero());

    p.stress_load = [](double) { return Vec::Constant(3, 7.0); };
    CHECK(difference_load_G(p, 3, 2, 0.1).isZero());
    CHECK(difference_load_G(p, 3, 0, 0.1).isZero());

    p.stress_load = [](double t) { return Vec::Constant(3, 1.5 * t); };
    CHECK(difference_load_G(p, 3, 4, 0.1)[1] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(difference_load_G(p, 3, 0, 0.1)[1] == doctest::Approx(1.5).epsilon(1e-12));

    p.stress_load = [](double t) { return Vec::Constant(3, std::sin(t)); };
    CHECK(difference_load_G(p, 3, 3, 0.1)[0] == doctest::Approx((std::sin(0.35) - std::sin(0.25)) / 0.1).epsilon(1e-13));
    CHECK(difference_load_G(p, 3, 0, 0.1)[0] == doctest::Approx(2 * std::sin(0.05) / 0.1).epsilon(1e-13));
}

TEST_CASE("load functions with the wrong size are rejected")
{
    LoadProgram<double> p;
    p.force = [](double) { return Vec::Zero(3); };
    CHECK_THROWS_AS(average_load_F(p, 4, 0, 0.1), ConfigError);
}
