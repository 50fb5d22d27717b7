#pragma once

#include "leapfrog/core/dof.hpp"
#include "leapfrog/elastic2d/material.hpp"
#include "leapfrog/processes/viscoplastic.hpp"
#include "leapfrog/scenarios/config.hpp"

#include <cstdint>
#include <vector>

namespace leapfrog::driver {

/// Mean over 2x2 blocks of a cell-centred 2-vector field.
Vector<double> restrict_cells(const Vector<double>& fine, Index nx, Index ny);

/// sqrt(h^2 sum |a_i|^2) over a cell-centred field.
double cell_l2(const Vector<double>& a, double h);

struct ConvergenceResult {
    std::vector<long long> cells;
    std::vector<double> tau;
    std::vector<std::int64_t> steps;
    /// ||R v_{l+1} - v_l|| between consecutive levels.
    std::vector<double> differences;
    /// ||R^{L-l} v_L - v_l|| against the finest level.
    std::vector<double> errors;
    /// log2 of the ratio of the last two differences (NaN if they vanish).
    double order = 0;
};

/// Run the null-process levels (same final time, tau halving with h) and
/// compare final velocities.
ConvergenceResult run_convergence(const std::vector<scenarios::ScenarioConfig>& levels);

struct RelaxationResult {
    double tau = 0;
    double error_coarse = 0;  ///< at tau
    double error_fine = 0;    ///< at tau / 2
    double order = 0;
    double final_stress = 0;  ///< shear stress at the end, step tau
    double analytic = 0;
};

/// Shear stress history of a single node held at fixed total shear strain,
/// relaxing through the local visco-plastic flow rule. Entry k is at t = k tau.
std::vector<double> relaxation_history(const MaterialParams<double>& m, const ViscoplasticParams<double>& p,
                                       double shear_strain, double tau, std::int64_t steps);

/// Compare against s0 exp(-2 G t / D) at t = duration for tau and tau / 2.
RelaxationResult maxwell_relaxation(const MaterialParams<double>& m, const ViscoplasticParams<double>& p,
                                    double shear_strain, double duration, double tau);

}  // namespace leapfrog::driver
