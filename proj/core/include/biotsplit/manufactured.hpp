#pragma once

#include <array>
#include <string>
#include <vector>

#include "biotsplit/biot_system.hpp"
#include "biotsplit/params.hpp"

namespace biotsplit {

/// Named (nu, c0, K) settings of the benchmark.
struct Preset {
    std::string name;
    double nu;
    double c0;
    double K;
};

const std::vector<Preset>& presets();
/// Throws std::invalid_argument listing the known names.
const Preset& find_preset(const std::string& name);
ParameterSet apply_preset(ParameterSet base, const Preset& preset);

/// Smooth exact solution on the unit square with e^{-t} time dependence,
/// vanishing displacement and pressure on x = 0 and x = 1.
///
/// All closures are exact; forcing and boundary data follow from the
/// strong form
///   -div(2 mu eps(u)) + grad xi = f,   xi = alpha p - lambda div u,
///   (c0 + alpha^2/lambda) p_t - (alpha/lambda) xi_t - K lap p = Q_s,
/// with traction (2 mu eps(u) - xi I) n and flux K grad p . n.
class ManufacturedCase {
public:
    explicit ManufacturedCase(const PhysParams& params);

    [[nodiscard]] const PhysParams& params() const noexcept { return params_; }

    [[nodiscard]] Vec2 displacement(Vec2 x, double t) const;
    /// gradient[c] = grad of component c.
    [[nodiscard]] std::array<Vec2, 2> displacement_gradient(Vec2 x, double t) const;
    [[nodiscard]] double divergence(Vec2 x, double t) const;
    [[nodiscard]] double pressure(Vec2 x, double t) const;
    [[nodiscard]] Vec2 pressure_gradient(Vec2 x, double t) const;
    [[nodiscard]] double total_pressure(Vec2 x, double t) const;
    [[nodiscard]] Vec2 total_pressure_gradient(Vec2 x, double t) const;

    [[nodiscard]] Vec2 body_force(Vec2 x, double t) const;
    [[nodiscard]] double mass_source(Vec2 x, double t) const;
    [[nodiscard]] Vec2 traction(Vec2 x, Vec2 normal, double t) const;
    [[nodiscard]] double flux(Vec2 x, Vec2 normal, double t) const;

    /// Benchmark data: profiles at t = 0 with factor e^{-t} for loads and
    /// Dirichlet values.
    [[nodiscard]] ProblemData problem_data() const;
    /// Loads frozen at their t = 0 profile (factor 1) and zero Dirichlet
    /// data; the setting of the discrete energy identity.
    [[nodiscard]] ProblemData frozen_homogeneous_data() const;

    /// Nodal interpolants of u, xi, p at time t.
    [[nodiscard]] BiotState interpolated_state(const DiscreteSystem& sys, double t) const;
    /// Interpolated u and p at t = 0 with constrained dofs set to zero, and
    /// the total pressure that satisfies the discrete total-pressure
    /// equation for them.
    [[nodiscard]] BiotState homogeneous_initial_state(const DiscreteSystem& sys) const;

private:
    PhysParams params_;
    double inv_ml_;  ///< 1 / (mu + lambda)
};

}  // namespace biotsplit
