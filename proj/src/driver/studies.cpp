#include "leapfrog/driver/studies.hpp"

#include "leapfrog/core/errors.hpp"
#include "leapfrog/core/integrator.hpp"
#include "leapfrog/scenarios/build.hpp"

#include <cmath>
#include <limits>

namespace leapfrog::driver {

Vector<double> restrict_cells(const Vector<double>& fine, Index nx, Index ny)
{
    if (nx % 2 || ny % 2 || fine.size() != 2 * nx * ny) {
        throw ConfigError("restriction needs an even grid matching the field");
    }
    const Index cx = nx / 2;
    const Index cy = ny / 2;
    Vector<double> out = Vector<double>::Zero(2 * cx * cy);
    for (Index j = 0; j < ny; ++j) {
        for (Index i = 0; i < nx; ++i) {
            out.segment<2>(2 * ((j / 2) * cx + i / 2)) += fine.segment<2>(2 * (j * nx + i)) / 4;
        }
    }
    return out;
}

double cell_l2(const Vector<double>& a, double h) { return h * a.norm(); }

ConvergenceResult run_convergence(const std::vector<scenarios::ScenarioConfig>& levels)
{
    if (levels.size() < 3) {
        throw ConfigError("convergence study needs at least 3 levels");
    }
    ConvergenceResult r;
    std::vector<Vector<double>> finals;
    std::vector<double> hs;
    for (const auto& c : levels) {
        if (c.process.kind != scenarios::ProcessKind::null || !(c.time.tau > 0)) {
            throw ConfigError("convergence levels must be null-process runs with an explicit tau");
        }
        const auto s = scenarios::build_scenario(c);
        const auto& proc = std::get<NullProcess<scenarios::Ops>>(*s.process);
        const std::int64_t n = scenarios::step_count(c.time.duration, c.time.tau);
        RunMonitors<double> mon;
        mon.audit = false;
        auto res = run(s.initial, *s.ops, proc, s.program, c.time.tau, n, mon);
        if (res.failure) {
            throw BlowUpError(res.failure->step, res.failure->message);
        }
        r.cells.push_back(c.domain.nx);
        r.tau.push_back(c.time.tau);
        r.steps.push_back(n);
        finals.push_back(std::move(res.state.v));
        hs.push_back(c.h());
    }

    auto restrict_to = [&](std::size_t from, std::size_t to) {
        Vector<double> v = finals[from];
        for (std::size_t l = from; l > to; --l) {
            v = restrict_cells(v, levels[l].domain.nx, levels[l].domain.ny);
        }
        return v;
    };
    const std::size_t last = finals.size() - 1;
    for (std::size_t l = 0; l < last; ++l) {
        r.differences.push_back(cell_l2(restrict_to(l + 1, l) - finals[l], hs[l]));
        r.errors.push_back(cell_l2(restrict_to(last, l) - finals[l], hs[l]));
    }
    const double a = r.differences[last - 2];
    const double b = r.differences[last - 1];
    r.order = (a > 0 && b > 0) ? std::log2(a / b) : std::numeric_limits<double>::quiet_NaN();
    return r;
}

std::vector<double> relaxation_history(const MaterialParams<double>& m, const ViscoplasticParams<double>& p,
                                       double shear_strain, double tau, std::int64_t steps)
{
    const SymTensor2<double> e(0, 0, shear_strain);
    const SymTensor2<double> sigma = hooke(m, e);
    SymTensor2<double> pi = SymTensor2<double>::Zero();
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(steps + 1));
    out.push_back(sigma[2]);
    for (std::int64_t k = 0; k < steps; ++k) {
        pi = viscoplastic_local_flow(m, p, sigma, pi, tau);
        out.push_back((sigma - hooke(m, pi))[2]);
    }
    return out;
}

RelaxationResult maxwell_relaxation(const MaterialParams<double>& m, const ViscoplasticParams<double>& p,
                                    double shear_strain, double duration, double tau)
{
    const auto n = static_cast<std::int64_t>(std::llround(duration / tau));
    if (n < 1 || std::abs(static_cast<double>(n) * tau - duration) > 1e-9 * duration) {
        throw ConfigError("relaxation: duration must be a multiple of tau");
    }
    RelaxationResult r;
    r.tau = tau;
    const double s0 = 2 * m.G * shear_strain;
    r.analytic = s0 * std::exp(-2 * m.G * duration / p.viscosity);
    r.final_stress = relaxation_history(m, p, shear_strain, tau, n).back();
    const double fine = relaxation_history(m, p, shear_strain, tau / 2, 2 * n).back();
    r.error_coarse = std::abs(r.final_stress - r.analytic);
    r.error_fine = std::abs(fine - r.analytic);
    r.order = (r.error_coarse > 0 && r.error_fine > 0) ? std::log2(r.error_coarse / r.error_fine)
                                                         : std::numeric_limits<double>::quiet_NaN();
    return r;
}

}  // namespace leapfrog::driver
