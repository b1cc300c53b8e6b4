#include "biotsplit/steppers.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace biotsplit {

void SolveStats::record(double residual)
{
    ++solves;
    if (!(residual <= max_residual)) max_residual = residual;
}

void SolveStats::merge(const SolveStats& other)
{
    solves += other.solves;
    max_residual = std::max(max_residual, other.max_residual);
}

const char* to_string(Algorithm a)
{
    switch (a) {
    case Algorithm::coupled: return "coupled";
    case Algorithm::te: return "te";
    case Algorithm::iterative: return "iterative";
    }
    return "unknown";
}

Algorithm parse_algorithm(const std::string& name)
{
    if (name == "coupled") return Algorithm::coupled;
    if (name == "te") return Algorithm::te;
    if (name == "iterative") return Algorithm::iterative;
    throw std::invalid_argument("unknown algorithm '" + name + "': expected coupled, te or iterative");
}

namespace {

std::vector<double> concat(std::initializer_list<std::span<const double>> parts)
{
    std::vector<double> out;
    for (auto p : parts) out.insert(out.end(), p.begin(), p.end());
    return out;
}

std::vector<double> zeros(Index n) { return std::vector<double>(static_cast<std::size_t>(n), 0.0); }

}  // namespace

CoupledStepper::CoupledStepper(const DiscreteSystem& sys)
    : Stepper(sys), elim_(sys.coupled_matrix(), sys.coupled_mask()), lu_(elim_.matrix())
{
}

BiotState CoupledStepper::step(const BiotState& previous)
{
    const DiscreteSystem& sys = *sys_;
    const PhysParams& par = sys.params();
    const double t = previous.t + par.dt();
    const double a_l = par.alpha() / par.lambda();

    // -(dt Q + storage M p_old - (alpha / lambda) M xi_old)
    std::vector<double> rp = sys.pressure_load(t);
    for (double& v : rp) v *= par.dt();
    axpy(par.storage(), sys.mass() * previous.p.values, rp);
    axpy(-a_l, sys.mass() * previous.xi.values, rp);
    for (double& v : rp) v = -v;

    const std::vector<double> fu = sys.displacement_load(t);
    const std::vector<double> zx = zeros(sys.nxi());
    const std::vector<double> rhs = concat({fu, zx, rp});
    const std::vector<double> ub = sys.displacement_bc(t);
    const std::vector<double> pb = sys.pressure_bc(t);
    const std::vector<double> values = concat({ub, zx, pb});

    const std::vector<double> b = elim_.constrain_rhs(rhs, values);
    std::vector<double> x = lu_.solve(b);

    std::vector<double> r = elim_.matrix() * x;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = b[i] - r[i];
    const double bn = norm2(b);
    const std::array<std::size_t, 4> cuts{0, static_cast<std::size_t>(sys.nu()), static_cast<std::size_t>(sys.nu() + sys.nxi()),
                                          r.size()};
    double worst = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
        const double rn = norm2(std::span<const double>(r.data() + cuts[k], cuts[k + 1] - cuts[k]));
        block_residuals_[k] = bn > 0.0 ? rn / bn : rn;
        worst = std::max(worst, block_residuals_[k]);
    }
    stats_.record(worst);

    const auto ou = x.begin() + static_cast<std::ptrdiff_t>(cuts[1]);
    const auto ox = x.begin() + static_cast<std::ptrdiff_t>(cuts[2]);
    return sys.make_state(std::vector<double>(x.begin(), ou), std::vector<double>(ou, ox), std::vector<double>(ox, x.end()), t);
}

SplitSolvers::SplitSolvers(const DiscreteSystem& sys, bool cg_pressure, double cg_tol)
    : sys_(&sys),
      stokes_elim_(sys.stokes_matrix(), sys.stokes_mask()),
      stokes_lu_(stokes_elim_.matrix()),
      pressure_elim_(sys.pressure_matrix(), sys.pressure_space()->constrained_mask()),
      cg_pressure_(cg_pressure),
      cg_tol_(cg_tol)
{
    if (!cg_pressure_) pressure_lu_.emplace(pressure_elim_.matrix());
}

void SplitSolvers::solve_stokes(std::span<const double> pressure, double t, std::vector<double>& u, std::vector<double>& xi,
                                SolveStats& stats) const
{
    const DiscreteSystem& sys = *sys_;
    const double a_l = sys.params().alpha() / sys.params().lambda();
    std::vector<double> rx = sys.mass() * pressure;
    for (double& v : rx) v *= -a_l;
    const std::vector<double> fu = sys.displacement_load(t);
    const std::vector<double> rhs = concat({fu, rx});
    const std::vector<double> ub = sys.displacement_bc(t);
    const std::vector<double> zx = zeros(sys.nxi());
    const std::vector<double> values = concat({ub, zx});
    const std::vector<double> b = stokes_elim_.constrain_rhs(rhs, values);
    const std::vector<double> x = stokes_lu_.solve(b);
    stats.record(relative_residual(stokes_elim_.matrix(), x, b));
    const auto split = x.begin() + sys.nu();
    u.assign(x.begin(), split);
    xi.assign(split, x.end());
}

std::vector<double> SplitSolvers::solve_pressure(std::span<const double> p_old, std::span<const double> xi_old,
                                                 std::span<const double> xi_new, double t, SolveStats& stats) const
{
    const DiscreteSystem& sys = *sys_;
    const PhysParams& par = sys.params();
    std::vector<double> rhs = sys.pressure_load(t);
    for (double& v : rhs) v *= par.dt();
    axpy(par.storage(), sys.mass() * p_old, rhs);
    const std::vector<double> dxi = subtract(xi_new, xi_old);
    axpy(par.alpha() / par.lambda(), sys.mass() * dxi, rhs);
    const std::vector<double> b = pressure_elim_.constrain_rhs(rhs, sys.pressure_bc(t));
    std::vector<double> p;
    if (pressure_lu_) {
        p = pressure_lu_->solve(b);
    } else {
        p = cg_solve(pressure_elim_.matrix(), b, cg_tol_, 10 * static_cast<int>(b.size()) + 100).x;
    }
    stats.record(relative_residual(pressure_elim_.matrix(), p, b));
    return p;
}

TeStepper::TeStepper(const DiscreteSystem& sys, bool cg_pressure) : Stepper(sys), solvers_(sys, cg_pressure, 1e-12) {}

BiotState TeStepper::step(const BiotState& previous)
{
    const double t = previous.t + sys_->params().dt();
    std::vector<double> u;
    std::vector<double> xi;
    solvers_.solve_stokes(previous.p.values, t, u, xi, stats_);
    std::vector<double> p = solvers_.solve_pressure(previous.p.values, previous.xi.values, xi, t, stats_);
    return sys_->make_state(std::move(u), std::move(xi), std::move(p), t);
}

IterativeStepper::IterativeStepper(const DiscreteSystem& sys, IterationControl control)
    : Stepper(sys), control_(control), solvers_(sys, control.cg_pressure, control.cg_tol)
{
    if (control_.tol) {
        if (!(*control_.tol > 0.0)) throw std::invalid_argument("IterativeStepper: tol must be positive");
        if (control_.max_iterations < 1) throw std::invalid_argument("IterativeStepper: max_iterations must be >= 1");
    } else if (control_.iterations < 1) {
        throw std::invalid_argument("IterativeStepper: iteration count must be >= 1, got " + std::to_string(control_.iterations));
    }
}

BiotState IterativeStepper::step(const BiotState& previous) { return step_from(previous, previous.xi.values); }

BiotState IterativeStepper::step_from(const BiotState& previous, std::span<const double> xi_start)
{
    const double t = previous.t + sys_->params().dt();
    const int limit = control_.tol ? control_.max_iterations : control_.iterations;
    increments_.clear();
    std::vector<double> xi_iter(xi_start.begin(), xi_start.end());
    std::vector<double> u;
    std::vector<double> xi;
    std::vector<double> p;
    for (int i = 1; i <= limit; ++i) {
        p = solvers_.solve_pressure(previous.p.values, previous.xi.values, xi_iter, t, stats_);
        solvers_.solve_stokes(p, t, u, xi, stats_);
        increments_.push_back(sys_->l2_norm(subtract(xi, xi_iter)));
        xi_iter = xi;
        if (control_.tol && increments_.back() <= *control_.tol) {
            return sys_->make_state(std::move(u), std::move(xi), std::move(p), t);
        }
    }
    if (control_.tol) {
        std::ostringstream msg;
        msg << "iterative splitting: increment did not reach " << *control_.tol << " in " << limit
            << " iterations at t = " << t << "; increments:";
        for (double v : increments_) msg << ' ' << v;
        throw ConvergenceError(msg.str(), limit, increments_.back());
    }
    return sys_->make_state(std::move(u), std::move(xi), std::move(p), t);
}

std::unique_ptr<Stepper> make_stepper(Algorithm algorithm, const DiscreteSystem& sys, const IterationControl& control)
{
    switch (algorithm) {
    case Algorithm::coupled: return std::make_unique<CoupledStepper>(sys);
    case Algorithm::te: return std::make_unique<TeStepper>(sys, control.cg_pressure);
    case Algorithm::iterative: return std::make_unique<IterativeStepper>(sys, control);
    }
    throw std::invalid_argument("make_stepper: unknown algorithm");
}

std::vector<BiotState> march(Stepper& stepper, const BiotState& initial, int steps)
{
    std::vector<BiotState> states;
    states.reserve(static_cast<std::size_t>(steps) + 1);
    states.push_back(initial);
    for (int n = 0; n < steps; ++n) states.push_back(stepper.step(states.back()));
    return states;
}

}  // namespace biotsplit
