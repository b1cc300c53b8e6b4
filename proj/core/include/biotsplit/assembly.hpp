#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "biotsplit/space.hpp"
#include "biotsplit/sparse.hpp"

namespace biotsplit {

/// Unit-coefficient bilinear forms. Physical factors (2 mu, 1/lambda,
/// alpha/lambda, c0 + alpha^2/lambda, K dt) are applied by the caller.
///
/// | kind         | trial        | test         | entry (row = test i, col = trial j) |
/// |--------------|--------------|--------------|--------------------------------------|
/// | elasticity   | P2-vector    | P2-vector    | (eps(phi_j), eps(phi_i))             |
/// | div_coupling | scalar       | P2-vector    | (q_j, div v_i)                       |
/// | div_coupling | P2-vector    | scalar       | (div v_j, q_i)                       |
/// | mass         | scalar/vector| same rank    | (phi_j, phi_i)                       |
/// | stiffness    | scalar       | scalar       | (grad phi_j, grad phi_i)             |
/// | div_div      | P2-vector    | P2-vector    | (div phi_j, div phi_i)               |
enum class FormKind {
    elasticity,
    div_coupling,
    mass,
    stiffness,
    div_div,
};

const char* to_string(FormKind kind);

/// Throws std::invalid_argument when the spaces live on different meshes or
/// the kinds do not fit the form.
SparseMatrix assemble_form(FormKind kind, const Space& trial, const Space& test);

using BoundaryScalarField = std::function<double(Vec2 point, Vec2 normal)>;
using BoundaryVectorField = std::function<Vec2(Vec2 point, Vec2 normal)>;

/// Sides carrying traction and flux data in the benchmark.
inline constexpr std::array<BoundaryTag, 2> kNeumannSides{BoundaryTag::bottom, BoundaryTag::top};
/// Sides carrying displacement and pressure Dirichlet data in the benchmark.
inline constexpr std::array<BoundaryTag, 2> kDirichletSides{BoundaryTag::right, BoundaryTag::left};

/// (f, phi_i) for every test function.
std::vector<double> assemble_volume_load(const Space& test, const ScalarField& f);
std::vector<double> assemble_volume_load(const Space& test, const VectorField& f);

/// <g, phi_i> over the boundary edges whose tag is in `sides`, with a
/// 5-point Gauss rule per edge. An empty tag set is rejected.
std::vector<double> assemble_boundary_load(const Space& test, const BoundaryScalarField& g,
                                           std::span<const BoundaryTag> sides);
std::vector<double> assemble_boundary_load(const Space& test, const BoundaryVectorField& g,
                                           std::span<const BoundaryTag> sides);

/// Full-length vector holding g at every constrained dof of `space` and 0
/// elsewhere.
std::vector<double> dirichlet_values(const Space& space, const ScalarField& g);
std::vector<double> dirichlet_values(const Space& space, const VectorField& g);

/// Row and column elimination of constrained dofs.
///
/// The constrained matrix has identity rows and columns at constrained
/// dofs, so it stays symmetric when the input is. The removed columns are
/// kept to lift Dirichlet values into any right-hand side, which lets one
/// factorization serve time-dependent boundary data.
class DirichletElimination {
public:
    DirichletElimination(const SparseMatrix& full, std::vector<char> constrained);

    [[nodiscard]] const SparseMatrix& matrix() const noexcept { return matrix_; }
    [[nodiscard]] const std::vector<char>& mask() const noexcept { return mask_; }

    /// rhs - A[:, constrained] g on free rows, g on constrained rows.
    /// `values` is full length; only constrained entries are read.
    [[nodiscard]] std::vector<double> constrain_rhs(std::span<const double> rhs, std::span<const double> values) const;

private:
    SparseMatrix matrix_;
    SparseMatrix lifting_;
    std::vector<char> mask_;
};

/// One-shot elimination of the constrained dofs of `space` (A square over
/// that space).
void apply_dirichlet(SparseMatrix& a, std::vector<double>& rhs, const Space& space, std::span<const double> values);
void apply_dirichlet(SparseMatrix& a, std::vector<double>& rhs, const Space& space, const ScalarField& g);

}  // namespace biotsplit
