#include "biotsplit/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "biotsplit/parallel.hpp"
#include "biotsplit/quadrature.hpp"

namespace biotsplit {

namespace {

// Basis values and physical gradients of one space at the quadrature points
// of one element.
struct ElementBasis {
    int nodes = 0;
    std::vector<std::array<double, 6>> values;  // [q][k]
    std::vector<std::array<Vec2, 6>> grads;     // [q][k]
};

class ReferenceTable {
public:
    ReferenceTable(SpaceKind kind, const QuadratureRule& rule)
    {
        for (const auto& qp : rule.points) table_.push_back(eval_basis(kind, qp.barycentric));
    }

    void fill(const ElementMap& map, ElementBasis& out) const
    {
        out.nodes = table_.front().count;
        out.values.resize(table_.size());
        out.grads.resize(table_.size());
        for (std::size_t q = 0; q < table_.size(); ++q) {
            for (int k = 0; k < out.nodes; ++k) {
                out.values[q][static_cast<std::size_t>(k)] = table_[q].values[static_cast<std::size_t>(k)];
                out.grads[q][static_cast<std::size_t>(k)] = map.physical_gradient(table_[q].gradients[static_cast<std::size_t>(k)]);
            }
        }
    }

private:
    std::vector<BasisValues> table_;
};

double component(Vec2 v, int c) { return c == 0 ? v.x : v.y; }

void check_compatible(FormKind kind, const Space& trial, const Space& test)
{
    if (&trial.mesh() != &test.mesh()) {
        throw std::invalid_argument(std::string("assemble_form(") + to_string(kind) + "): trial and test spaces live on different meshes");
    }
    bool ok = false;
    switch (kind) {
    case FormKind::elasticity:
    case FormKind::div_div:
        ok = trial.kind() == SpaceKind::p2_vector && test.kind() == SpaceKind::p2_vector;
        break;
    case FormKind::div_coupling: ok = trial.is_vector() != test.is_vector(); break;
    case FormKind::mass: ok = trial.is_vector() == test.is_vector(); break;
    case FormKind::stiffness: ok = !trial.is_vector() && !test.is_vector(); break;
    }
    if (!ok) {
        throw std::invalid_argument(std::string("assemble_form(") + to_string(kind) + "): incompatible spaces " +
                                    to_string(trial.kind()) + " -> " + to_string(test.kind()));
    }
}

// Local matrix entry for test dof (k, c) and trial dof (l, d) at one point.
double integrand(FormKind kind, const ElementBasis& test, const ElementBasis& trial, std::size_t q, int k, int c,
                 int l, int d, bool test_vector, bool trial_vector)
{
    const auto kk = static_cast<std::size_t>(k);
    const auto ll = static_cast<std::size_t>(l);
    switch (kind) {
    case FormKind::elasticity: {
        const Vec2 gk = test.grads[q][kk];
        const Vec2 gl = trial.grads[q][ll];
        if (c == d) return 0.5 * (dot(gk, gl) + component(gk, c) * component(gl, c));
        return 0.5 * component(gk, d) * component(gl, c);
    }
    case FormKind::div_div: return component(test.grads[q][kk], c) * component(trial.grads[q][ll], d);
    case FormKind::div_coupling:
        if (test_vector) return trial.values[q][ll] * component(test.grads[q][kk], c);
        return component(trial.grads[q][ll], d) * test.values[q][kk];
    case FormKind::mass:
        if (test_vector && trial_vector && c != d) return 0.0;
        return trial.values[q][ll] * test.values[q][kk];
    case FormKind::stiffness: return dot(trial.grads[q][ll], test.grads[q][kk]);
    }
    return 0.0;
}

}  // namespace

const char* to_string(FormKind kind)
{
    switch (kind) {
    case FormKind::elasticity: return "elasticity";
    case FormKind::div_coupling: return "div_coupling";
    case FormKind::mass: return "mass";
    case FormKind::stiffness: return "stiffness";
    case FormKind::div_div: return "div_div";
    }
    return "unknown";
}

SparseMatrix assemble_form(FormKind kind, const Space& trial, const Space& test)
{
    check_compatible(kind, trial, test);
    const QuadratureRule& rule = triangle_rule(kDefaultQuadratureDegree);
    const ReferenceTable trial_ref(trial.kind(), rule);
    const ReferenceTable test_ref(test.kind(), rule);
    const TriMesh& mesh = trial.mesh();
    const std::size_t n_tri = mesh.num_triangles();
    const int trial_nc = trial.components();
    const int test_nc = test.components();

    const int chunks = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(assembly_threads()),
                                                              std::max<std::size_t>(1, n_tri / 256)));
    std::vector<std::vector<Triplet>> parts(static_cast<std::size_t>(chunks));
    parallel_chunks(n_tri, chunks, [&](int chunk, std::size_t begin, std::size_t end) {
        auto& out = parts[static_cast<std::size_t>(chunk)];
        ElementBasis tb;
        ElementBasis sb;
        std::array<double, 144> local{};
        for (std::size_t t = begin; t < end; ++t) {
            const auto tri = static_cast<Index>(t);
            const ElementMap map(mesh.triangle_vertices(tri));
            trial_ref.fill(map, tb);
            test_ref.fill(map, sb);
            const ElementDofs trial_dofs = trial.element_dofs(tri);
            const ElementDofs test_dofs = test.element_dofs(tri);
            const int nrow = test_dofs.count;
            const int ncol = trial_dofs.count;
            std::fill(local.begin(), local.end(), 0.0);
            for (std::size_t q = 0; q < rule.points.size(); ++q) {
                const double w = rule.points[q].weight * map.jacobian_determinant();
                for (int i = 0; i < nrow; ++i) {
                    const int k = i / test_nc;
                    const int c = i % test_nc;
                    for (int j = 0; j < ncol; ++j) {
                        const int l = j / trial_nc;
                        const int d = j % trial_nc;
                        local[static_cast<std::size_t>(i * ncol + j)] +=
                            w * integrand(kind, sb, tb, q, k, c, l, d, test_nc == 2, trial_nc == 2);
                    }
                }
            }
            for (int i = 0; i < nrow; ++i) {
                for (int j = 0; j < ncol; ++j) {
                    out.push_back({test_dofs.dofs[static_cast<std::size_t>(i)], trial_dofs.dofs[static_cast<std::size_t>(j)],
                                   local[static_cast<std::size_t>(i * ncol + j)]});
                }
            }
        }
    });

    std::size_t total = 0;
    for (const auto& p : parts) total += p.size();
    std::vector<Triplet> triplets;
    triplets.reserve(total);
    for (auto& p : parts) {
        triplets.insert(triplets.end(), p.begin(), p.end());
        std::vector<Triplet>().swap(p);
    }
    return SparseMatrix::from_triplets(test.dof_count(), trial.dof_count(), triplets);
}

namespace {

template <class Eval>
std::vector<double> volume_load(const Space& test, Eval&& eval)
{
    const QuadratureRule& rule = triangle_rule(kDefaultQuadratureDegree);
    const ReferenceTable ref(test.kind(), rule);
    const TriMesh& mesh = test.mesh();
    const int nc = test.components();
    std::vector<double> out(static_cast<std::size_t>(test.dof_count()), 0.0);
    ElementBasis b;
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto tri = static_cast<Index>(t);
        const ElementMap map(mesh.triangle_vertices(tri));
        ref.fill(map, b);
        const ElementDofs dofs = test.element_dofs(tri);
        for (std::size_t q = 0; q < rule.points.size(); ++q) {
            const double w = rule.points[q].weight * map.jacobian_determinant();
            const Vec2 x = map.to_physical(rule.points[q].barycentric);
            const Vec2 f = eval(x);
            for (int i = 0; i < dofs.count; ++i) {
                const int k = i / nc;
                const int c = i % nc;
                out[static_cast<std::size_t>(dofs.dofs[static_cast<std::size_t>(i)])] +=
                    w * component(f, c) * b.values[q][static_cast<std::size_t>(k)];
            }
        }
    }
    return out;
}

template <class Eval>
std::vector<double> boundary_load(const Space& test, std::span<const BoundaryTag> sides, Eval&& eval)
{
    if (sides.empty()) throw std::invalid_argument("assemble_boundary_load: empty boundary tag set");
    const TriMesh& mesh = test.mesh();
    const int nc = test.components();
    std::vector<double> out(static_cast<std::size_t>(test.dof_count()), 0.0);
    for (std::size_t b = 0; b < mesh.boundary_edges().size(); ++b) {
        const auto& be = mesh.boundary_edges()[b];
        if (std::find(sides.begin(), sides.end(), be.tag) == sides.end()) continue;
        const Vec2 a = mesh.vertices()[static_cast<std::size_t>(be.vertices[0])];
        const Vec2 e = mesh.vertices()[static_cast<std::size_t>(be.vertices[1])];
        const double length = std::sqrt(dot(e - a, e - a));
        const Vec2 normal = outward_normal(be.tag);
        int count = 0;
        const auto nodes = test.boundary_edge_nodes(static_cast<Index>(b), count);
        for (const auto& sp : segment_rule()) {
            const double s = sp.s;
            const Vec2 x = a + s * (e - a);
            std::array<double, 3> phi{};
            if (count == 2) {
                phi = {1.0 - s, s, 0.0};
            } else {
                phi = {(1.0 - s) * (1.0 - 2.0 * s), s * (2.0 * s - 1.0), 4.0 * s * (1.0 - s)};
            }
            const Vec2 g = eval(x, normal);
            for (int k = 0; k < count; ++k) {
                for (int c = 0; c < nc; ++c) {
                    out[static_cast<std::size_t>(nodes[static_cast<std::size_t>(k)] * nc + c)] +=
                        sp.weight * length * component(g, c) * phi[static_cast<std::size_t>(k)];
                }
            }
        }
    }
    return out;
}

}  // namespace

std::vector<double> assemble_volume_load(const Space& test, const ScalarField& f)
{
    if (test.is_vector()) throw std::invalid_argument("assemble_volume_load: scalar data for a vector space");
    return volume_load(test, [&](Vec2 x) { return Vec2{f(x), 0.0}; });
}

std::vector<double> assemble_volume_load(const Space& test, const VectorField& f)
{
    if (!test.is_vector()) throw std::invalid_argument("assemble_volume_load: vector data for a scalar space");
    return volume_load(test, f);
}

std::vector<double> assemble_boundary_load(const Space& test, const BoundaryScalarField& g, std::span<const BoundaryTag> sides)
{
    if (test.is_vector()) throw std::invalid_argument("assemble_boundary_load: scalar data for a vector space");
    return boundary_load(test, sides, [&](Vec2 x, Vec2 n) { return Vec2{g(x, n), 0.0}; });
}

std::vector<double> assemble_boundary_load(const Space& test, const BoundaryVectorField& g, std::span<const BoundaryTag> sides)
{
    if (!test.is_vector()) throw std::invalid_argument("assemble_boundary_load: vector data for a scalar space");
    return boundary_load(test, sides, g);
}

std::vector<double> dirichlet_values(const Space& space, const ScalarField& g)
{
    if (space.is_vector()) throw std::invalid_argument("dirichlet_values: scalar data for a vector space");
    std::vector<double> out(static_cast<std::size_t>(space.dof_count()), 0.0);
    for (Index d : space.constrained_dofs()) out[static_cast<std::size_t>(d)] = g(space.node_coordinates(d));
    return out;
}

std::vector<double> dirichlet_values(const Space& space, const VectorField& g)
{
    if (!space.is_vector()) throw std::invalid_argument("dirichlet_values: vector data for a scalar space");
    std::vector<double> out(static_cast<std::size_t>(space.dof_count()), 0.0);
    for (Index d : space.constrained_dofs()) {
        const Vec2 v = g(space.node_coordinates(d / 2));
        out[static_cast<std::size_t>(d)] = component(v, d % 2);
    }
    return out;
}

DirichletElimination::DirichletElimination(const SparseMatrix& full, std::vector<char> constrained)
    : mask_(std::move(constrained))
{
    if (full.rows() != full.cols() || mask_.size() != static_cast<std::size_t>(full.rows())) {
        throw std::invalid_argument("DirichletElimination: matrix must be square and match the constraint mask");
    }
    const Index n = full.rows();
    std::vector<Index> offsets{0};
    std::vector<Index> cols;
    std::vector<double> vals;
    std::vector<Index> lift_offsets{0};
    std::vector<Index> lift_cols;
    std::vector<double> lift_vals;
    offsets.reserve(static_cast<std::size_t>(n) + 1);
    cols.reserve(full.nonzeros());
    vals.reserve(full.nonzeros());
    for (Index r = 0; r < n; ++r) {
        if (mask_[static_cast<std::size_t>(r)]) {
            cols.push_back(r);
            vals.push_back(1.0);
        } else {
            for (Index k = full.row_offsets()[static_cast<std::size_t>(r)]; k < full.row_offsets()[static_cast<std::size_t>(r) + 1]; ++k) {
                const Index c = full.col_indices()[static_cast<std::size_t>(k)];
                const double v = full.values()[static_cast<std::size_t>(k)];
                if (mask_[static_cast<std::size_t>(c)]) {
                    lift_cols.push_back(c);
                    lift_vals.push_back(v);
                } else {
                    cols.push_back(c);
                    vals.push_back(v);
                }
            }
        }
        offsets.push_back(static_cast<Index>(cols.size()));
        lift_offsets.push_back(static_cast<Index>(lift_cols.size()));
    }
    matrix_ = SparseMatrix(n, n, std::move(offsets), std::move(cols), std::move(vals));
    lifting_ = SparseMatrix(n, n, std::move(lift_offsets), std::move(lift_cols), std::move(lift_vals));
}

std::vector<double> DirichletElimination::constrain_rhs(std::span<const double> rhs, std::span<const double> values) const
{
    const auto n = static_cast<std::size_t>(matrix_.rows());
    if (rhs.size() != n || values.size() != n) throw std::invalid_argument("DirichletElimination::constrain_rhs: length mismatch");
    std::vector<double> g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        if (mask_[i]) g[i] = values[i];
    }
    std::vector<double> out = lifting_ * g;
    for (std::size_t i = 0; i < n; ++i) out[i] = mask_[i] ? g[i] : rhs[i] - out[i];
    return out;
}

void apply_dirichlet(SparseMatrix& a, std::vector<double>& rhs, const Space& space, std::span<const double> values)
{
    if (a.rows() != space.dof_count()) throw std::invalid_argument("apply_dirichlet: matrix does not match space");
    const DirichletElimination elim(a, space.constrained_mask());
    rhs = elim.constrain_rhs(rhs, values);
    a = elim.matrix();
}

void apply_dirichlet(SparseMatrix& a, std::vector<double>& rhs, const Space& space, const ScalarField& g)
{
    const std::vector<double> values = dirichlet_values(space, g);
    apply_dirichlet(a, rhs, space, values);
}

}  // namespace biotsplit
