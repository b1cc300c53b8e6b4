#include "biotsplit/space.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace biotsplit {

Space::Space(std::shared_ptr<const TriMesh> mesh, SpaceKind kind, std::initializer_list<BoundaryTag> dirichlet_tags)
    : Space(std::move(mesh), kind, std::vector<BoundaryTag>(dirichlet_tags))
{
}

Space::Space(std::shared_ptr<const TriMesh> mesh, SpaceKind kind, std::vector<BoundaryTag> dirichlet_tags)
    : mesh_(std::move(mesh)), kind_(kind), dirichlet_tags_(std::move(dirichlet_tags))
{
    if (!mesh_) throw std::invalid_argument("Space: null mesh");
    switch (kind_) {
    case SpaceKind::p1_scalar: node_count_ = static_cast<Index>(mesh_->num_vertices()); break;
    case SpaceKind::p2_scalar:
    case SpaceKind::p2_vector:
        node_count_ = static_cast<Index>(mesh_->num_vertices() + mesh_->num_edges());
        break;
    default: throw std::invalid_argument("Space: unknown space kind");
    }
    std::sort(dirichlet_tags_.begin(), dirichlet_tags_.end());
    dirichlet_tags_.erase(std::unique(dirichlet_tags_.begin(), dirichlet_tags_.end()), dirichlet_tags_.end());
    mark_constraints();
}

Vec2 Space::node_coordinates(Index node) const
{
    const auto nv = static_cast<Index>(mesh_->num_vertices());
    if (node < nv) return mesh_->vertices()[static_cast<std::size_t>(node)];
    const auto& e = mesh_->edges()[static_cast<std::size_t>(node - nv)];
    return 0.5 * (mesh_->vertices()[static_cast<std::size_t>(e[0])] + mesh_->vertices()[static_cast<std::size_t>(e[1])]);
}

std::array<Index, 6> Space::element_nodes(Index t) const
{
    const auto& tri = mesh_->triangles()[static_cast<std::size_t>(t)];
    std::array<Index, 6> nodes{tri[0], tri[1], tri[2], -1, -1, -1};
    if (kind_ != SpaceKind::p1_scalar) {
        const auto nv = static_cast<Index>(mesh_->num_vertices());
        const auto& e = mesh_->triangle_edges(t);
        nodes[3] = nv + e[0];
        nodes[4] = nv + e[1];
        nodes[5] = nv + e[2];
    }
    return nodes;
}

ElementDofs Space::element_dofs(Index t) const
{
    const auto nodes = element_nodes(t);
    const int nn = nodes_per_element(kind_);
    const int nc = components();
    ElementDofs out;
    out.count = nn * nc;
    for (int k = 0; k < nn; ++k) {
        for (int c = 0; c < nc; ++c) {
            out.dofs[static_cast<std::size_t>(k * nc + c)] = nodes[static_cast<std::size_t>(k)] * nc + c;
        }
    }
    return out;
}

std::array<Index, 3> Space::boundary_edge_nodes(Index b, int& count) const
{
    const auto& be = mesh_->boundary_edges()[static_cast<std::size_t>(b)];
    if (kind_ == SpaceKind::p1_scalar) {
        count = 2;
        return {be.vertices[0], be.vertices[1], -1};
    }
    count = 3;
    return {be.vertices[0], be.vertices[1], static_cast<Index>(mesh_->num_vertices()) + mesh_->boundary_edge_id(b)};
}

void Space::mark_constraints()
{
    constrained_.assign(static_cast<std::size_t>(dof_count()), 0);
    const int nc = components();
    for (std::size_t b = 0; b < mesh_->boundary_edges().size(); ++b) {
        const auto tag = mesh_->boundary_edges()[b].tag;
        if (std::find(dirichlet_tags_.begin(), dirichlet_tags_.end(), tag) == dirichlet_tags_.end()) continue;
        int count = 0;
        const auto nodes = boundary_edge_nodes(static_cast<Index>(b), count);
        for (int k = 0; k < count; ++k) {
            for (int c = 0; c < nc; ++c) constrained_[static_cast<std::size_t>(nodes[static_cast<std::size_t>(k)] * nc + c)] = 1;
        }
    }
    constrained_dofs_.clear();
    for (Index d = 0; d < dof_count(); ++d) {
        if (constrained_[static_cast<std::size_t>(d)]) constrained_dofs_.push_back(d);
    }
}

FieldVector::FieldVector(std::shared_ptr<const Space> s)
    : space(std::move(s)), values(static_cast<std::size_t>(space->dof_count()), 0.0)
{
}

FieldVector::FieldVector(std::shared_ptr<const Space> s, std::vector<double> v)
    : space(std::move(s)), values(std::move(v))
{
    if (values.size() != static_cast<std::size_t>(space->dof_count())) {
        throw std::invalid_argument("FieldVector: length " + std::to_string(values.size()) +
                                    " does not match dof count " + std::to_string(space->dof_count()));
    }
}

FieldVector interpolate(std::shared_ptr<const Space> space, const ScalarField& f)
{
    if (space->is_vector()) throw std::invalid_argument("interpolate: scalar function given for a vector space");
    FieldVector out(space);
    for (Index n = 0; n < space->node_count(); ++n) out.values[static_cast<std::size_t>(n)] = f(space->node_coordinates(n));
    return out;
}

FieldVector interpolate(std::shared_ptr<const Space> space, const VectorField& f)
{
    if (!space->is_vector()) throw std::invalid_argument("interpolate: vector function given for a scalar space");
    FieldVector out(space);
    for (Index n = 0; n < space->node_count(); ++n) {
        const Vec2 v = f(space->node_coordinates(n));
        out.values[static_cast<std::size_t>(2 * n)] = v.x;
        out.values[static_cast<std::size_t>(2 * n + 1)] = v.y;
    }
    return out;
}

ScalarSample evaluate_scalar(const FieldVector& field, Index triangle, const std::array<double, 3>& barycentric)
{
    const Space& space = *field.space;
    if (space.is_vector()) throw std::invalid_argument("evaluate_scalar: field is vector valued");
    const ElementMap map(space.mesh().triangle_vertices(triangle));
    const BasisValues basis = eval_basis(space.kind(), barycentric);
    const auto nodes = space.element_nodes(triangle);
    ScalarSample s;
    for (int k = 0; k < basis.count; ++k) {
        const double c = field.values[static_cast<std::size_t>(nodes[static_cast<std::size_t>(k)])];
        s.value += c * basis.values[static_cast<std::size_t>(k)];
        s.gradient = s.gradient + c * map.physical_gradient(basis.gradients[static_cast<std::size_t>(k)]);
    }
    return s;
}

VectorSample evaluate_vector(const FieldVector& field, Index triangle, const std::array<double, 3>& barycentric)
{
    const Space& space = *field.space;
    if (!space.is_vector()) throw std::invalid_argument("evaluate_vector: field is scalar valued");
    const ElementMap map(space.mesh().triangle_vertices(triangle));
    const BasisValues basis = eval_basis(space.kind(), barycentric);
    const auto nodes = space.element_nodes(triangle);
    VectorSample s;
    for (int k = 0; k < basis.count; ++k) {
        const auto node = static_cast<std::size_t>(nodes[static_cast<std::size_t>(k)]);
        const double cx = field.values[2 * node];
        const double cy = field.values[2 * node + 1];
        const double phi = basis.values[static_cast<std::size_t>(k)];
        const Vec2 g = map.physical_gradient(basis.gradients[static_cast<std::size_t>(k)]);
        s.value = s.value + Vec2{cx * phi, cy * phi};
        s.gradient[0] = s.gradient[0] + cx * g;
        s.gradient[1] = s.gradient[1] + cy * g;
    }
    return s;
}

}  // namespace biotsplit
