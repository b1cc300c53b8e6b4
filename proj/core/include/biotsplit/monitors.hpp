#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "biotsplit/biot_system.hpp"
#include "biotsplit/steppers.hpp"

namespace biotsplit {

struct ContractionOptions {
    int max_iterations = 60;
    /// Initial total-pressure iterate; the previous time level when unset.
    std::optional<std::vector<double>> xi_start;
    /// Errors at or below floor_factor * eps * ||xi_ref|| are treated as
    /// round-off: ratios are not formed from them.
    double floor_factor = 1e3;
    /// Stop at the first iterate with ||e_xi^i|| <= 1e-8 ||e_xi^0||.
    bool stop_when_reduced = false;
};

/// Iteration errors of the splitting against the monolithic step.
///
/// Index i of xi_errors is ||xi^{n,i} - xi^n||_{L2} (i = 0 is the start);
/// p_errors and strain_errors hold ||p^{n,i} - p^n|| and
/// ||eps(u^{n,i} - u^n)|| for i >= 1 (entry 0 unused, set to 0).
struct ContractionReport {
    double bound = 0.0;  ///< (alpha^2/lambda) / (c0 + alpha^2/lambda)
    double noise_floor = 0.0;
    std::vector<double> xi_errors;
    std::vector<double> p_errors;
    std::vector<double> strain_errors;
    std::vector<double> ratios;  ///< r_i for every i whose e^{i-1} is above the floor
    double max_ratio = 0.0;
    int bound_violations = 0;      ///< r_i > bound + 1e-8
    int pressure_violations = 0;   ///< ||e_p^i|| > (bound / alpha) ||e_xi^{i-1}||
    int strain_violations = 0;     ///< ||eps(e_u^i)|| > sqrt(2) / (2 mu) ||e_xi^i||
    int monotonicity_violations = 0;
    /// First i with ||e_xi^i|| <= 1e-8 ||e_xi^0||, or -1.
    int reduction_iteration = -1;

    [[nodiscard]] bool bounds_hold() const noexcept
    {
        return bound_violations == 0 && pressure_violations == 0 && strain_violations == 0;
    }
};

ContractionReport contraction_monitor(const DiscreteSystem& sys, const BiotState& previous, const ContractionOptions& options = {});

/// Summands of the dissipation sum for one step n (all scaled by dt as in
/// S^l = sum_n dt * (...)).
struct EnergyStepTerms {
    double strain_rate = 0.0;    ///< dt^2 mu ||d_t eps(u)||^2
    double coupling_rate = 0.0;  ///< dt^2 / (2 lambda) ||d_t (alpha p - xi)||^2
    double storage_rate = 0.0;   ///< dt^2 c0 / 2 ||d_t p||^2
    double diffusion = 0.0;      ///< dt K ||grad p||^2
    double source = 0.0;         ///< -dt (Q, p)
};

/// J^l, S^l and |J^l + S^l - J^0| / (|J^0| + 1) for l = 0..N.
struct EnergyReport {
    std::vector<double> energy;
    std::vector<double> dissipation;
    std::vector<double> defect;
    std::vector<EnergyStepTerms> steps;  ///< entry 0 unused
    double max_defect = 0.0;
};

/// Requires a monolithic trajectory with homogeneous Dirichlet data and
/// time-independent loads; otherwise the identity does not apply.
EnergyReport energy_check(const DiscreteSystem& sys, std::span<const BiotState> trajectory);

struct KornReport {
    int samples = 0;
    int violations = 0;
    double worst_ratio = 0.0;  ///< max ||div u|| / ||eps(u)||
};

/// ||div u|| <= sqrt(2) ||eps(u)|| over random P2 vector fields with
/// coefficients uniform in [-1, 1]; a violation exceeds the bound by more
/// than rel_tol * ||eps(u)||.
KornReport korn_check(const Space& displacement_space, int samples, std::uint64_t seed, double rel_tol = 1e-12);

}  // namespace biotsplit
