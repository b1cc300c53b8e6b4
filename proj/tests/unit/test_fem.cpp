#include <cmath>
#include <memory>
#include <numeric>
#include <random>
#include <set>

#include <gtest/gtest.h>

#include <biotsplit/basis.hpp>
#include <biotsplit/mesh.hpp>
#include <biotsplit/quadrature.hpp>
#include <biotsplit/space.hpp>

namespace biotsplit {
namespace {

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

// Integral of x^a y^b over {(0,0), (1,0), (0,1)}.
double monomial_integral(int a, int b) { return factorial(a) * factorial(b) / factorial(a + b + 2); }

double apply_rule(const QuadratureRule& rule, int a, int b)
{
    double s = 0.0;
    for (const auto& q : rule.points) s += q.weight * std::pow(q.barycentric[1], a) * std::pow(q.barycentric[2], b);
    return s;
}

std::array<double, 3> random_barycentric(std::mt19937_64& rng)
{
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double r = u(rng), s = u(rng);
    if (r + s > 1.0) {
        r = 1.0 - r;
        s = 1.0 - s;
    }
    return {1.0 - r - s, r, s};
}

std::shared_ptr<const TriMesh> unit_mesh(int n) { return std::make_shared<const TriMesh>(build_uniform(n)); }

TEST(Quadrature, ConstantIntegratesToHalf)
{
    for (int d = 1; d <= 5; ++d) EXPECT_EQ(apply_rule(triangle_rule(d), 0, 0), 0.5);
}

TEST(Quadrature, KnownMonomials)
{
    const auto& rule = triangle_rule(5);
    EXPECT_NEAR(apply_rule(rule, 2, 1), 1.0 / 60.0, 1e-15);
    EXPECT_NEAR(apply_rule(rule, 3, 2), monomial_integral(3, 2), 1e-15);
}

TEST(Quadrature, ExactToStatedDegree)
{
    for (int d = 1; d <= 5; ++d) {
        const auto& rule = triangle_rule(d);
        EXPECT_GE(rule.degree, d);
        for (int a = 0; a <= d; ++a) {
            for (int b = 0; a + b <= d; ++b) {
                EXPECT_NEAR(apply_rule(rule, a, b), monomial_integral(a, b), 1e-15) << "rule " << d << ": x^" << a << " y^" << b;
            }
        }
    }
}

TEST(Quadrature, SymmetricPoints)
{
    // Permuting barycentric coordinates maps the rule onto itself.
    const auto& rule = triangle_rule(5);
    for (const auto& q : rule.points) {
        const std::array<double, 3> rotated{q.barycentric[1], q.barycentric[2], q.barycentric[0]};
        bool found = false;
        for (const auto& r : rule.points) {
            if (std::abs(r.weight - q.weight) < 1e-15 && std::abs(r.barycentric[0] - rotated[0]) < 1e-15 &&
                std::abs(r.barycentric[1] - rotated[1]) < 1e-15) {
                found = true;
            }
        }
        EXPECT_TRUE(found);
    }
}

TEST(Quadrature, RejectsUnsupportedDegree)
{
    EXPECT_THROW(triangle_rule(0), std::invalid_argument);
    EXPECT_THROW(triangle_rule(6), std::invalid_argument);
}

TEST(Quadrature, SegmentRuleExactToDegreeNine)
{
    const auto& rule = segment_rule();
    for (int k = 0; k <= 9; ++k) {
        double s = 0.0;
        for (const auto& q : rule) s += q.weight * std::pow(q.s, k);
        EXPECT_NEAR(s, 1.0 / (k + 1), 1e-15) << "s^" << k;
    }
}

TEST(Basis, P1NodalValues)
{
    const auto v = eval_basis(SpaceKind::p1_scalar, {0.0, 1.0, 0.0});
    ASSERT_EQ(v.count, 3);
    EXPECT_EQ(v.values[0], 0.0);
    EXPECT_EQ(v.values[1], 1.0);
    EXPECT_EQ(v.values[2], 0.0);
    const auto c = eval_basis(SpaceKind::p1_scalar, {1.0 / 3, 1.0 / 3, 1.0 / 3});
    for (int i = 0; i < 3; ++i) EXPECT_NEAR(c.values[static_cast<std::size_t>(i)], 1.0 / 3, 1e-15);
}

TEST(Basis, P2NodalIdentity)
{
    const std::array<std::array<double, 3>, 6> nodes{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0.5, 0.5, 0}, {0, 0.5, 0.5}, {0.5, 0, 0.5}}};
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        const auto v = eval_basis(SpaceKind::p2_scalar, nodes[k]);
        ASSERT_EQ(v.count, 6);
        for (std::size_t j = 0; j < 6; ++j) EXPECT_NEAR(v.values[j], j == k ? 1.0 : 0.0, 1e-15);
    }
}

TEST(Basis, PartitionOfUnity)
{
    std::mt19937_64 rng(7);
    for (SpaceKind kind : {SpaceKind::p1_scalar, SpaceKind::p2_scalar, SpaceKind::p2_vector}) {
        for (int trial = 0; trial < 200; ++trial) {
            const auto v = eval_basis(kind, random_barycentric(rng));
            double s = 0.0;
            Vec2 g;
            for (int i = 0; i < v.count; ++i) {
                s += v.values[static_cast<std::size_t>(i)];
                g = g + v.gradients[static_cast<std::size_t>(i)];
            }
            EXPECT_NEAR(s, 1.0, 1e-14);
            EXPECT_NEAR(g.x, 0.0, 1e-13);
            EXPECT_NEAR(g.y, 0.0, 1e-13);
        }
    }
}

TEST(Basis, GradientsMatchFiniteDifferences)
{
    std::mt19937_64 rng(11);
    const double h = 1e-6;
    for (int trial = 0; trial < 20; ++trial) {
        auto b = random_barycentric(rng);
        // pull toward the centroid so the stencil stays inside
        for (double& c : b) c = 0.8 * c + 0.2 / 3.0;
        const auto v = eval_basis(SpaceKind::p2_scalar, b);
        const auto rp = eval_basis(SpaceKind::p2_scalar, {b[0] - h, b[1] + h, b[2]});
        const auto rm = eval_basis(SpaceKind::p2_scalar, {b[0] + h, b[1] - h, b[2]});
        for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR((rp.values[i] - rm.values[i]) / (2 * h), v.gradients[i].x, 1e-8);
    }
}

TEST(Basis, RejectsInvalidPoint)
{
    EXPECT_THROW(eval_basis(SpaceKind::p1_scalar, {0.5, 0.6, -0.1}), std::invalid_argument);
    EXPECT_THROW(eval_basis(SpaceKind::p1_scalar, {0.5, 0.6, 0.1}), std::invalid_argument);
}

TEST(Space, DofCounts)
{
    const auto mesh = unit_mesh(4);
    const std::size_t nv = mesh->num_vertices(), ne = mesh->num_edges();
    EXPECT_EQ(Space(mesh, SpaceKind::p1_scalar).dof_count(), static_cast<Index>(nv));
    EXPECT_EQ(Space(mesh, SpaceKind::p2_scalar).dof_count(), static_cast<Index>(nv + ne));
    EXPECT_EQ(Space(mesh, SpaceKind::p2_vector).dof_count(), static_cast<Index>(2 * (nv + ne)));
}

TEST(Space, ElementDofsInjectiveAndCovering)
{
    const auto mesh = unit_mesh(3);
    for (SpaceKind kind : {SpaceKind::p1_scalar, SpaceKind::p2_scalar, SpaceKind::p2_vector}) {
        const Space space(mesh, kind);
        std::vector<char> seen(static_cast<std::size_t>(space.dof_count()), 0);
        for (Index t = 0; t < static_cast<Index>(mesh->num_triangles()); ++t) {
            const auto d = space.element_dofs(t);
            std::set<Index> local(d.view().begin(), d.view().end());
            EXPECT_EQ(local.size(), static_cast<std::size_t>(d.count));
            for (Index i : d.view()) {
                ASSERT_GE(i, 0);
                ASSERT_LT(i, space.dof_count());
                seen[static_cast<std::size_t>(i)] = 1;
            }
        }
        EXPECT_EQ(std::count(seen.begin(), seen.end(), 1), space.dof_count()) << to_string(kind);
    }
}

TEST(Space, DofNumberingDeterministic)
{
    const Space a(unit_mesh(5), SpaceKind::p2_vector);
    const Space b(unit_mesh(5), SpaceKind::p2_vector);
    for (Index t = 0; t < 50; ++t) {
        const auto da = a.element_dofs(t), db = b.element_dofs(t);
        EXPECT_TRUE(std::equal(da.view().begin(), da.view().end(), db.view().begin()));
    }
}

TEST(Space, DirichletConstraintsIncludeCorners)
{
    const int n = 4;
    const auto mesh = unit_mesh(n);
    const Space p1(mesh, SpaceKind::p1_scalar, {BoundaryTag::right, BoundaryTag::left});
    // Both vertical sides: 2 (n + 1) vertices, corners included.
    EXPECT_EQ(p1.constrained_dofs().size(), static_cast<std::size_t>(2 * (n + 1)));
    for (Index d : p1.constrained_dofs()) {
        const Vec2 x = p1.node_coordinates(d);
        EXPECT_TRUE(x.x == 0.0 || x.x == 1.0);
    }
    const Space p2v(mesh, SpaceKind::p2_vector, {BoundaryTag::right, BoundaryTag::left});
    EXPECT_EQ(p2v.constrained_dofs().size(), static_cast<std::size_t>(2 * 2 * (2 * n + 1)));
}

TEST(Interpolate, ZeroAndLinear)
{
    const auto mesh = unit_mesh(4);
    const auto p1 = std::make_shared<const Space>(mesh, SpaceKind::p1_scalar);
    const auto zero = interpolate(p1, ScalarField([](Vec2) { return 0.0; }));
    EXPECT_TRUE(std::all_of(zero.values.begin(), zero.values.end(), [](double v) { return v == 0.0; }));
    const auto fx = interpolate(p1, ScalarField([](Vec2 x) { return x.x; }));
    for (Index i = 0; i < p1->dof_count(); ++i) EXPECT_EQ(fx.values[static_cast<std::size_t>(i)], mesh->vertices()[static_cast<std::size_t>(i)].x);
}

TEST(Interpolate, P2ReproducesQuadratics)
{
    const auto mesh = unit_mesh(3);
    const auto p2 = std::make_shared<const Space>(mesh, SpaceKind::p2_scalar);
    const auto p2v = std::make_shared<const Space>(mesh, SpaceKind::p2_vector);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<Index> tri(0, static_cast<Index>(mesh->num_triangles()) - 1);

    // x^2 at 50 random points
    const auto sq = interpolate(p2, ScalarField([](Vec2 x) { return x.x * x.x; }));
    for (int k = 0; k < 50; ++k) {
        const Index t = tri(rng);
        const auto b = random_barycentric(rng);
        const Vec2 x = ElementMap(mesh->triangle_vertices(t)).to_physical(b);
        EXPECT_NEAR(evaluate_scalar(sq, t, b).value, x.x * x.x, 1e-13);
    }

    for (int trial = 0; trial < 20; ++trial) {
        std::array<double, 6> c{};
        for (double& v : c) v = coef(rng);
        auto q = [c](Vec2 x) { return c[0] + c[1] * x.x + c[2] * x.y + c[3] * x.x * x.x + c[4] * x.x * x.y + c[5] * x.y * x.y; };
        auto dq = [c](Vec2 x) { return Vec2{c[1] + 2 * c[3] * x.x + c[4] * x.y, c[2] + c[4] * x.x + 2 * c[5] * x.y}; };
        const auto f = interpolate(p2, ScalarField(q));
        const auto fv = interpolate(p2v, VectorField([q](Vec2 x) { return Vec2{q(x), -2.0 * q(x)}; }));
        for (int k = 0; k < 10; ++k) {
            const Index t = tri(rng);
            const auto b = random_barycentric(rng);
            const Vec2 x = ElementMap(mesh->triangle_vertices(t)).to_physical(b);
            const auto s = evaluate_scalar(f, t, b);
            EXPECT_NEAR(s.value, q(x), 1e-12);
            EXPECT_NEAR(s.gradient.x, dq(x).x, 1e-11);
            EXPECT_NEAR(s.gradient.y, dq(x).y, 1e-11);
            const auto v = evaluate_vector(fv, t, b);
            EXPECT_NEAR(v.value.y, -2.0 * q(x), 1e-12);
            EXPECT_NEAR(v.gradient[1].x, -2.0 * dq(x).x, 1e-11);
        }
    }
}

TEST(Interpolate, RejectsRankMismatch)
{
    const auto mesh = unit_mesh(2);
    const auto p1 = std::make_shared<const Space>(mesh, SpaceKind::p1_scalar);
    const auto p2v = std::make_shared<const Space>(mesh, SpaceKind::p2_vector);
    EXPECT_THROW(interpolate(p1, VectorField([](Vec2 x) { return x; })), std::invalid_argument);
    EXPECT_THROW(interpolate(p2v, ScalarField([](Vec2) { return 1.0; })), std::invalid_argument);
}

}  // namespace
}  // namespace biotsplit
