#include "biotsplit/errors.hpp"

#include <cmath>
#include <stdexcept>

#include "biotsplit/quadrature.hpp"

namespace biotsplit {

namespace {

// Sum over elements and quadrature points of body(triangle, bary, weight).
template <class Body>
void integrate(const TriMesh& mesh, Body&& body)
{
    const QuadratureRule& rule = triangle_rule(kDefaultQuadratureDegree);
    for (std::size_t t = 0; t < mesh.num_triangles(); ++t) {
        const auto tri = static_cast<Index>(t);
        const ElementMap map(mesh.triangle_vertices(tri));
        for (const auto& qp : rule.points) body(tri, qp.barycentric, map.to_physical(qp.barycentric), qp.weight * map.jacobian_determinant());
    }
}

}  // namespace

NormPair scalar_error(const FieldVector& field, const ScalarField& exact, const VectorField& exact_gradient)
{
    if (!field.space || field.space->is_vector()) throw std::invalid_argument("scalar_error: needs a scalar field");
    double l2 = 0.0;
    double semi = 0.0;
    integrate(field.space->mesh(), [&](Index tri, const std::array<double, 3>& bary, Vec2 x, double w) {
        const ScalarSample s = evaluate_scalar(field, tri, bary);
        const double e = s.value - exact(x);
        const Vec2 g = s.gradient - exact_gradient(x);
        l2 += w * e * e;
        semi += w * dot(g, g);
    });
    return {std::sqrt(l2), std::sqrt(l2 + semi)};
}

NormPair vector_error(const FieldVector& field, const VectorField& exact,
                      const std::function<std::array<Vec2, 2>(Vec2)>& exact_gradient)
{
    if (!field.space || !field.space->is_vector()) throw std::invalid_argument("vector_error: needs a vector field");
    double l2 = 0.0;
    double semi = 0.0;
    integrate(field.space->mesh(), [&](Index tri, const std::array<double, 3>& bary, Vec2 x, double w) {
        const VectorSample s = evaluate_vector(field, tri, bary);
        const Vec2 e = s.value - exact(x);
        const auto g = exact_gradient(x);
        const Vec2 g0 = s.gradient[0] - g[0];
        const Vec2 g1 = s.gradient[1] - g[1];
        l2 += w * dot(e, e);
        semi += w * (dot(g0, g0) + dot(g1, g1));
    });
    return {std::sqrt(l2), std::sqrt(l2 + semi)};
}

FieldErrors compute_errors(const BiotState& state, const ManufacturedCase& exact)
{
    const double t = state.t;
    FieldErrors out;
    out.u = vector_error(
        state.u, [&](Vec2 x) { return exact.displacement(x, t); }, [&](Vec2 x) { return exact.displacement_gradient(x, t); });
    out.xi = scalar_error(
        state.xi, [&](Vec2 x) { return exact.total_pressure(x, t); }, [&](Vec2 x) { return exact.total_pressure_gradient(x, t); });
    out.p = scalar_error(
        state.p, [&](Vec2 x) { return exact.pressure(x, t); }, [&](Vec2 x) { return exact.pressure_gradient(x, t); });
    return out;
}

}  // namespace biotsplit
