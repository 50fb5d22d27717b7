#pragma once

// Independent reference implementations used by the tests: dense assembly of
// linear operators and derivative-free minimisers.

#include "leapfrog/core/dof.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <functional>
#include <random>

namespace oracle {

using leapfrog::Index;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

/// Dense matrix of a linear map given as a callable, assembled column by column.
inline Mat assemble(Index rows, Index cols, const std::function<Vec(const Vec&)>& op)
{
    Mat a(rows, cols);
    Vec e = Vec::Zero(cols);
    for (Index c = 0; c < cols; ++c) {
        e[c] = 1;
        a.col(c) = op(e);
        e[c] = 0;
    }
    return a;
}

/// Dense Gram matrix of a bilinear form.
inline Mat gram(Index n, const std::function<double(const Vec&, const Vec&)>& form)
{
    Mat a(n, n);
    Vec ei = Vec::Zero(n);
    Vec ej = Vec::Zero(n);
    for (Index i = 0; i < n; ++i) {
        ei[i] = 1;
        for (Index j = 0; j < n; ++j) {
            ej[j] = 1;
            a(i, j) = form(ei, ej);
            ej[j] = 0;
        }
        ei[i] = 0;
    }
    return a;
}

inline Vec random_vector(std::mt19937_64& rng, Index n, double scale = 1.0)
{
    std::uniform_real_distribution<double> d(-scale, scale);
    Vec v(n);
    for (Index i = 0; i < n; ++i) {
        v[i] = d(rng);
    }
    return v;
}

/// Golden-section search for the minimum of a unimodal f on [a, b].
inline double golden_section(const std::function<double(double)>& f, double a, double b, double tol = 1e-12)
{
    const double r = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - r * (b - a);
    double d = a + r * (b - a);
    double fc = f(c);
    double fd = f(d);
    while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    return (a + b) / 2;
}

/// Minimum of f over a uniform grid on [a, b] with n + 1 points.
inline double grid_minimise(const std::function<double(double)>& f, double a, double b, int n)
{
    double best = a;
    double fbest = f(a);
    for (int i = 1; i <= n; ++i) {
        const double x = a + (b - a) * i / n;
        const double fx = f(x);
        if (fx < fbest) {
            fbest = fx;
            best = x;
        }
    }
    return best;
}

}  // namespace oracle
