#pragma once

#include <array>
#include <functional>
#include <initializer_list>
#include <memory>
#include <span>
#include <vector>

#include "biotsplit/basis.hpp"
#include "biotsplit/mesh.hpp"

namespace biotsplit {

using ScalarField = std::function<double(Vec2)>;
using VectorField = std::function<Vec2(Vec2)>;

/// Degrees of freedom of one element: `count` valid entries.
struct ElementDofs {
    int count = 0;
    std::array<Index, 12> dofs{};
    [[nodiscard]] std::span<const Index> view() const { return {dofs.data(), static_cast<std::size_t>(count)}; }
};

/// Continuous Lagrange space on a TriMesh.
///
/// Nodes are the mesh vertices followed (P2 only) by the edge midpoints in
/// global edge order. A vector space interleaves components: dof = 2 * node + c.
/// Every node on an edge carrying one of the Dirichlet tags is constrained,
/// so corners shared with a Neumann side are constrained as well.
class Space {
public:
    Space(std::shared_ptr<const TriMesh> mesh, SpaceKind kind, std::initializer_list<BoundaryTag> dirichlet_tags = {});
    Space(std::shared_ptr<const TriMesh> mesh, SpaceKind kind, std::vector<BoundaryTag> dirichlet_tags);

    [[nodiscard]] SpaceKind kind() const noexcept { return kind_; }
    [[nodiscard]] const TriMesh& mesh() const noexcept { return *mesh_; }
    [[nodiscard]] const std::shared_ptr<const TriMesh>& mesh_ptr() const noexcept { return mesh_; }
    [[nodiscard]] int components() const noexcept { return kind_ == SpaceKind::p2_vector ? 2 : 1; }
    [[nodiscard]] bool is_vector() const noexcept { return components() == 2; }
    [[nodiscard]] Index node_count() const noexcept { return node_count_; }
    [[nodiscard]] Index dof_count() const noexcept { return node_count_ * components(); }
    [[nodiscard]] const std::vector<BoundaryTag>& dirichlet_tags() const noexcept { return dirichlet_tags_; }

    [[nodiscard]] Vec2 node_coordinates(Index node) const;
    /// Global node ids of triangle `t` in local basis order.
    [[nodiscard]] std::array<Index, 6> element_nodes(Index t) const;
    /// Global dofs of triangle `t`; local dof of (node k, component c) is
    /// k * components() + c.
    [[nodiscard]] ElementDofs element_dofs(Index t) const;
    /// Nodes on the given boundary edge (2 for P1, 3 for P2: endpoints, then midpoint).
    [[nodiscard]] std::array<Index, 3> boundary_edge_nodes(Index b, int& count) const;

    [[nodiscard]] bool is_constrained(Index dof) const { return constrained_[static_cast<std::size_t>(dof)] != 0; }
    [[nodiscard]] const std::vector<char>& constrained_mask() const noexcept { return constrained_; }
    [[nodiscard]] const std::vector<Index>& constrained_dofs() const noexcept { return constrained_dofs_; }

private:
    void mark_constraints();

    std::shared_ptr<const TriMesh> mesh_;
    SpaceKind kind_;
    std::vector<BoundaryTag> dirichlet_tags_;
    Index node_count_ = 0;
    std::vector<char> constrained_;
    std::vector<Index> constrained_dofs_;
};

/// Coefficient vector of a finite element function.
struct FieldVector {
    std::shared_ptr<const Space> space;
    std::vector<double> values;

    FieldVector() = default;
    explicit FieldVector(std::shared_ptr<const Space> s);
    FieldVector(std::shared_ptr<const Space> s, std::vector<double> v);
};

/// Nodal interpolation. Throws std::invalid_argument when a scalar field is
/// given for a vector space or vice versa.
FieldVector interpolate(std::shared_ptr<const Space> space, const ScalarField& f);
FieldVector interpolate(std::shared_ptr<const Space> space, const VectorField& f);

struct ScalarSample {
    double value = 0.0;
    Vec2 gradient;
};

struct VectorSample {
    Vec2 value;
    std::array<Vec2, 2> gradient;  ///< gradient[c] = grad of component c
};

ScalarSample evaluate_scalar(const FieldVector& field, Index triangle, const std::array<double, 3>& barycentric);
VectorSample evaluate_vector(const FieldVector& field, Index triangle, const std::array<double, 3>& barycentric);

}  // namespace biotsplit
