#include "biotsplit/monitors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "biotsplit/assembly.hpp"

namespace biotsplit {

ContractionReport contraction_monitor(const DiscreteSystem& sys, const BiotState& previous, const ContractionOptions& options)
{
    const PhysParams& par = sys.params();
    ContractionReport rep;
    rep.bound = par.contraction_factor();

    CoupledStepper coupled(sys);
    const BiotState ref = coupled.step(previous);

    const double eps = std::numeric_limits<double>::epsilon();
    rep.noise_floor = options.floor_factor * eps * sys.l2_norm(ref.xi.values);
    const double p_floor = options.floor_factor * eps * sys.l2_norm(ref.p.values);
    const double u_floor = options.floor_factor * eps * sys.strain_norm(ref.u.values);
    const double strain_const = std::sqrt(2.0) / (2.0 * par.mu());

    const SplitSolvers solvers(sys, false, 0.0);
    SolveStats stats;
    const double t = previous.t + par.dt();

    std::vector<double> xi_iter = options.xi_start ? *options.xi_start : previous.xi.values;
    if (xi_iter.size() != static_cast<std::size_t>(sys.nxi())) throw std::invalid_argument("contraction_monitor: bad initial iterate length");
    rep.xi_errors.push_back(sys.l2_norm(subtract(xi_iter, ref.xi.values)));
    rep.p_errors.push_back(0.0);
    rep.strain_errors.push_back(0.0);
    const double initial = rep.xi_errors.front();

    std::vector<double> u;
    std::vector<double> xi;
    for (int i = 1; i <= options.max_iterations; ++i) {
        const std::vector<double> p = solvers.solve_pressure(previous.p.values, previous.xi.values, xi_iter, t, stats);
        solvers.solve_stokes(p, t, u, xi, stats);
        const double exi = sys.l2_norm(subtract(xi, ref.xi.values));
        const double ep = sys.l2_norm(subtract(p, ref.p.values));
        const double eu = sys.strain_norm(subtract(u, ref.u.values));
        const double prev_exi = rep.xi_errors.back();
        rep.xi_errors.push_back(exi);
        rep.p_errors.push_back(ep);
        rep.strain_errors.push_back(eu);

        if (prev_exi > rep.noise_floor) {
            const double r = exi / prev_exi;
            rep.ratios.push_back(r);
            rep.max_ratio = std::max(rep.max_ratio, r);
            if (r > rep.bound + 1e-8) ++rep.bound_violations;
        }
        if (ep > rep.bound / par.alpha() * prev_exi + p_floor) ++rep.pressure_violations;
        if (eu > strain_const * exi + u_floor) ++rep.strain_violations;
        if (exi > prev_exi + rep.noise_floor) ++rep.monotonicity_violations;
        if (rep.reduction_iteration < 0 && exi <= 1e-8 * initial) rep.reduction_iteration = i;
        if (options.stop_when_reduced && rep.reduction_iteration > 0) break;
        xi_iter = xi;
    }
    return rep;
}

EnergyReport energy_check(const DiscreteSystem& sys, std::span<const BiotState> trajectory)
{
    if (trajectory.empty()) throw std::invalid_argument("energy_check: empty trajectory");
    const PhysParams& par = sys.params();
    const double mu = par.mu();
    const double lambda = par.lambda();
    const double alpha = par.alpha();
    const double c0 = par.c0();
    const double dt = par.dt();

    const auto coupling_var = [&](const BiotState& s) {
        std::vector<double> w(s.p.values);
        for (std::size_t i = 0; i < w.size(); ++i) w[i] = alpha * w[i] - s.xi.values[i];
        return w;
    };
    const auto energy = [&](const BiotState& s) {
        const std::vector<double> w = coupling_var(s);
        const std::vector<double> f = sys.displacement_load(s.t);
        const double eps2 = sys.elasticity().bilinear(s.u.values, s.u.values);
        return mu * eps2 + sys.mass().bilinear(w, w) / (2.0 * lambda) + 0.5 * c0 * sys.mass().bilinear(s.p.values, s.p.values) -
               dot(f, s.u.values);
    };

    EnergyReport rep;
    rep.energy.push_back(energy(trajectory[0]));
    rep.dissipation.push_back(0.0);
    rep.defect.push_back(0.0);
    rep.steps.emplace_back();
    const double j0 = rep.energy.front();
    double sum = 0.0;
    for (std::size_t n = 1; n < trajectory.size(); ++n) {
        const BiotState& s = trajectory[n];
        const BiotState& o = trajectory[n - 1];
        const std::vector<double> du = subtract(s.u.values, o.u.values);
        const std::vector<double> dw = subtract(coupling_var(s), coupling_var(o));
        const std::vector<double> dp = subtract(s.p.values, o.p.values);
        // dt^2 ||d_t v||^2 = ||v^n - v^{n-1}||^2
        EnergyStepTerms terms;
        terms.strain_rate = mu * sys.elasticity().bilinear(du, du);
        terms.coupling_rate = sys.mass().bilinear(dw, dw) / (2.0 * lambda);
        terms.storage_rate = 0.5 * c0 * sys.mass().bilinear(dp, dp);
        terms.diffusion = dt * par.K() * sys.stiffness().bilinear(s.p.values, s.p.values);
        terms.source = -dt * dot(sys.pressure_load(s.t), s.p.values);
        sum += terms.strain_rate + terms.coupling_rate + terms.storage_rate + terms.diffusion + terms.source;
        const double j = energy(s);
        rep.energy.push_back(j);
        rep.dissipation.push_back(sum);
        rep.defect.push_back(std::abs(j + sum - j0) / (std::abs(j0) + 1.0));
        rep.steps.push_back(terms);
        rep.max_defect = std::max(rep.max_defect, rep.defect.back());
    }
    return rep;
}

KornReport korn_check(const Space& displacement_space, int samples, std::uint64_t seed, double rel_tol)
{
    if (displacement_space.kind() != SpaceKind::p2_vector) throw std::invalid_argument("korn_check: needs a P2 vector space");
    const SparseMatrix strain = assemble_form(FormKind::elasticity, displacement_space, displacement_space);
    const SparseMatrix divergence = assemble_form(FormKind::div_div, displacement_space, displacement_space);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coeff(-1.0, 1.0);
    KornReport rep;
    std::vector<double> u(static_cast<std::size_t>(displacement_space.dof_count()));
    for (int k = 0; k < samples; ++k) {
        for (double& v : u) v = coeff(rng);
        const double e = std::sqrt(std::max(0.0, strain.bilinear(u, u)));
        const double d = std::sqrt(std::max(0.0, divergence.bilinear(u, u)));
        ++rep.samples;
        if (e > 0.0) rep.worst_ratio = std::max(rep.worst_ratio, d / e);
        if (d > std::sqrt(2.0) * e + rel_tol * e) ++rep.violations;
    }
    return rep;
}

}  // namespace biotsplit
