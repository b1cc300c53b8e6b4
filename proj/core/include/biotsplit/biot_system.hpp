#pragma once

#include <functional>
#include <memory>
#include <span>
#include <vector>

#include "biotsplit/assembly.hpp"
#include "biotsplit/params.hpp"
#include "biotsplit/space.hpp"
#include "biotsplit/sparse.hpp"

namespace biotsplit {

using TimeFactor = std::function<double(double)>;

/// Data of one Biot problem as (time factor) x (space profile). Empty
/// profiles mean zero; empty factors mean 1.
struct ProblemData {
    VectorField body_force;
    BoundaryVectorField traction;  ///< on the Neumann sides
    ScalarField mass_source;
    BoundaryScalarField flux;      ///< on the Neumann sides
    TimeFactor load_factor;

    VectorField displacement_bc;   ///< on the Dirichlet sides
    ScalarField pressure_bc;
    TimeFactor boundary_factor;
};

/// Discrete unknowns at one time level.
struct BiotState {
    FieldVector u;   ///< displacement, P2 vector
    FieldVector xi;  ///< total pressure, P1
    FieldVector p;   ///< fluid pressure, P1
    double t = 0.0;
};

/// Unit-coefficient operators and load profiles on one mesh, shared by all
/// three time steppers.
///
/// Block ordering of every monolithic vector is [u | xi | p]. The
/// displacement and pressure spaces are constrained on the left and right
/// sides; the total pressure is unconstrained.
class DiscreteSystem {
public:
    DiscreteSystem(std::shared_ptr<const TriMesh> mesh, const PhysParams& params, ProblemData data);

    [[nodiscard]] const PhysParams& params() const noexcept { return params_; }
    [[nodiscard]] const ProblemData& data() const noexcept { return data_; }
    [[nodiscard]] const TriMesh& mesh() const noexcept { return *mesh_; }

    [[nodiscard]] const std::shared_ptr<const Space>& displacement_space() const noexcept { return u_space_; }
    [[nodiscard]] const std::shared_ptr<const Space>& total_pressure_space() const noexcept { return xi_space_; }
    [[nodiscard]] const std::shared_ptr<const Space>& pressure_space() const noexcept { return p_space_; }
    [[nodiscard]] Index nu() const noexcept { return u_space_->dof_count(); }
    [[nodiscard]] Index nxi() const noexcept { return xi_space_->dof_count(); }
    [[nodiscard]] Index np() const noexcept { return p_space_->dof_count(); }

    /// (eps(u), eps(v))
    [[nodiscard]] const SparseMatrix& elasticity() const noexcept { return elasticity_; }
    /// (q, div v): rows displacement dofs, columns total-pressure dofs
    [[nodiscard]] const SparseMatrix& coupling() const noexcept { return coupling_; }
    /// P1 mass (shared by xi and p)
    [[nodiscard]] const SparseMatrix& mass() const noexcept { return mass_; }
    /// P1 stiffness
    [[nodiscard]] const SparseMatrix& stiffness() const noexcept { return stiffness_; }

    /// (f, v) + <h, v> at time t.
    [[nodiscard]] std::vector<double> displacement_load(double t) const;
    /// (Q_s, psi) + <g2, psi> at time t.
    [[nodiscard]] std::vector<double> pressure_load(double t) const;
    /// Full-length Dirichlet values at time t (zero at free dofs).
    [[nodiscard]] std::vector<double> displacement_bc(double t) const;
    [[nodiscard]] std::vector<double> pressure_bc(double t) const;

    /// [[2 mu A, -B], [-B^T, -M / lambda]] before constraints.
    [[nodiscard]] SparseMatrix stokes_matrix() const;
    [[nodiscard]] std::vector<char> stokes_mask() const;
    /// (c0 + alpha^2 / lambda) M + K dt S before constraints.
    [[nodiscard]] SparseMatrix pressure_matrix() const;
    /// Symmetric 3x3 block matrix of the monolithic step before constraints.
    [[nodiscard]] SparseMatrix coupled_matrix() const;
    [[nodiscard]] std::vector<char> coupled_mask() const;

    /// L2 norm of a P1 coefficient vector.
    [[nodiscard]] double l2_norm(std::span<const double> scalar) const;
    /// ||eps(u)||_{L2} of a displacement coefficient vector.
    [[nodiscard]] double strain_norm(std::span<const double> displacement) const;

    [[nodiscard]] BiotState make_state(std::vector<double> u, std::vector<double> xi, std::vector<double> p, double t) const;
    [[nodiscard]] BiotState zero_state(double t = 0.0) const;
    /// xi solving the total-pressure equation for given u and p:
    /// M xi = alpha M p - lambda B^T u.
    [[nodiscard]] std::vector<double> consistent_total_pressure(std::span<const double> u, std::span<const double> p) const;

private:
    std::shared_ptr<const TriMesh> mesh_;
    PhysParams params_;
    ProblemData data_;
    std::shared_ptr<const Space> u_space_;
    std::shared_ptr<const Space> xi_space_;
    std::shared_ptr<const Space> p_space_;
    SparseMatrix elasticity_;
    SparseMatrix coupling_;
    SparseMatrix mass_;
    SparseMatrix stiffness_;
    std::vector<double> displacement_profile_;
    std::vector<double> pressure_profile_;
    std::vector<double> displacement_bc_profile_;
    std::vector<double> pressure_bc_profile_;
};

}  // namespace biotsplit
