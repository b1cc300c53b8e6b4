#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "biotsplit/assembly.hpp"
#include "biotsplit/biot_system.hpp"
#include "biotsplit/linalg.hpp"

namespace biotsplit {

/// Relative residual above which a run is flagged as tainted.
inline constexpr double kResidualLimit = 1e-9;

struct SolveStats {
    int solves = 0;
    double max_residual = 0.0;

    void record(double residual);
    void merge(const SolveStats& other);
    [[nodiscard]] bool tainted() const noexcept { return max_residual > kResidualLimit; }
};

enum class Algorithm { coupled, te, iterative };

const char* to_string(Algorithm a);
/// Accepts "coupled", "te", "iterative"; throws std::invalid_argument otherwise.
Algorithm parse_algorithm(const std::string& name);

/// Stopping rule of the iterative splitting. Fixed-count mode when tol is
/// unset; otherwise iterate until the total-pressure increment drops to tol,
/// failing after max_iterations.
struct IterationControl {
    int iterations = 1;
    std::optional<double> tol;
    int max_iterations = 1000;
    bool cg_pressure = false;
    double cg_tol = 1e-12;
};

/// Backward Euler step from state_{n-1} to state_n. Factorizations are
/// computed once at construction.
class Stepper {
public:
    virtual ~Stepper() = default;
    virtual BiotState step(const BiotState& previous) = 0;
    [[nodiscard]] const SolveStats& stats() const noexcept { return stats_; }
    [[nodiscard]] const DiscreteSystem& system() const noexcept { return *sys_; }

protected:
    explicit Stepper(const DiscreteSystem& sys) : sys_(&sys) {}
    const DiscreteSystem* sys_;
    SolveStats stats_;
};

/// Monolithic solve of the 3x3 block system.
class CoupledStepper final : public Stepper {
public:
    explicit CoupledStepper(const DiscreteSystem& sys);
    BiotState step(const BiotState& previous) override;
    /// Worst per-equation residual of the last step, each relative to the
    /// norm of the full right-hand side.
    [[nodiscard]] const std::array<double, 3>& block_residuals() const noexcept { return block_residuals_; }

private:
    DirichletElimination elim_;
    Factorization lu_;
    std::array<double, 3> block_residuals_{};
};

/// Generalized Stokes solve and pressure solve, shared by the two splittings.
class SplitSolvers {
public:
    SplitSolvers(const DiscreteSystem& sys, bool cg_pressure, double cg_tol);

    /// (u, xi) for a given pressure.
    void solve_stokes(std::span<const double> pressure, double t, std::vector<double>& u, std::vector<double>& xi,
                      SolveStats& stats) const;
    /// p from M-weighted total-pressure data:
    /// P p = dt Q(t) + storage M p_old + (alpha / lambda) M (xi_new - xi_old)
    std::vector<double> solve_pressure(std::span<const double> p_old, std::span<const double> xi_old,
                                       std::span<const double> xi_new, double t, SolveStats& stats) const;

private:
    const DiscreteSystem* sys_;
    DirichletElimination stokes_elim_;
    Factorization stokes_lu_;
    DirichletElimination pressure_elim_;
    std::optional<Factorization> pressure_lu_;
    bool cg_pressure_;
    double cg_tol_;
};

/// Stokes first with the previous pressure, then the pressure.
class TeStepper final : public Stepper {
public:
    explicit TeStepper(const DiscreteSystem& sys, bool cg_pressure = false);
    BiotState step(const BiotState& previous) override;

private:
    SplitSolvers solvers_;
};

/// Alternates pressure and Stokes solves within each step, starting from
/// the previous time level.
class IterativeStepper final : public Stepper {
public:
    IterativeStepper(const DiscreteSystem& sys, IterationControl control);
    BiotState step(const BiotState& previous) override;
    /// Step with an explicit initial total-pressure iterate.
    BiotState step_from(const BiotState& previous, std::span<const double> xi_start);
    /// ||xi^{n,i} - xi^{n,i-1}||_{L2} for every iteration of the last step.
    [[nodiscard]] const std::vector<double>& increments() const noexcept { return increments_; }
    [[nodiscard]] const SplitSolvers& solvers() const noexcept { return solvers_; }

private:
    IterationControl control_;
    SplitSolvers solvers_;
    std::vector<double> increments_;
};

std::unique_ptr<Stepper> make_stepper(Algorithm algorithm, const DiscreteSystem& sys, const IterationControl& control = {});

/// `steps` backward Euler steps; returns the states at t_0, ..., t_steps.
std::vector<BiotState> march(Stepper& stepper, const BiotState& initial, int steps);

}  // namespace biotsplit
