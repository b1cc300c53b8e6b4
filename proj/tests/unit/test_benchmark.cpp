#include <cmath>
#include <memory>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include <biotsplit/errors.hpp>
#include <biotsplit/manufactured.hpp>
#include <biotsplit/mesh.hpp>
#include <biotsplit/study.hpp>

namespace biotsplit {
namespace {

// Fourth-order central difference.
template <class F>
double d4(F f, double h)
{
    return (8.0 * (f(h) - f(-h)) - (f(2 * h) - f(-2 * h))) / (12.0 * h);
}

struct Sample {
    Vec2 x;
    double t;
};

std::vector<Sample> random_samples(int count, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> pos(0.0, 1.0), time(0.0, 0.01);
    std::vector<Sample> s(static_cast<std::size_t>(count));
    for (auto& v : s) v = {{pos(rng), pos(rng)}, time(rng)};
    return s;
}

PhysParams preset_params(const Preset& p) { return PhysParams(apply_preset(ParameterSet{}, p)); }

class StrongForm : public ::testing::TestWithParam<Preset> {};

TEST_P(StrongForm, ResidualBelowTolerance)
{
    // -div(2 mu eps(u) - xi I) = f and
    // (c0 + alpha^2/lambda) p_t - (alpha/lambda) xi_t - K lap p = Q_s,
    // with the divergences and time derivatives taken by finite differences
    // of the closed-form fields.
    const PhysParams par = preset_params(GetParam());
    const ManufacturedCase mc(par);
    const double mu = par.mu(), lambda = par.lambda(), alpha = par.alpha();
    const double h = 1e-3;
    auto stress = [&](Vec2 x, double t) {
        const auto g = mc.displacement_gradient(x, t);
        const double xi = mc.total_pressure(x, t);
        return std::array<double, 3>{2 * mu * g[0].x - xi, 2 * mu * g[1].y - xi, mu * (g[0].y + g[1].x)};
    };
    double worst = 0.0;
    for (const auto& s : random_samples(100, 2024)) {
        const Vec2 x = s.x;
        const double t = s.t;
        const double dsxx_dx = d4([&](double e) { return stress({x.x + e, x.y}, t)[0]; }, h);
        const double dsxy_dy = d4([&](double e) { return stress({x.x, x.y + e}, t)[2]; }, h);
        const double dsxy_dx = d4([&](double e) { return stress({x.x + e, x.y}, t)[2]; }, h);
        const double dsyy_dy = d4([&](double e) { return stress({x.x, x.y + e}, t)[1]; }, h);
        const Vec2 f = mc.body_force(x, t);
        worst = std::max(worst, std::abs(-(dsxx_dx + dsxy_dy) - f.x));
        worst = std::max(worst, std::abs(-(dsxy_dx + dsyy_dy) - f.y));

        const double p_t = d4([&](double e) { return mc.pressure(x, t + e); }, h);
        const double xi_t = d4([&](double e) { return mc.total_pressure(x, t + e); }, h);
        const double lap = d4([&](double e) { return mc.pressure_gradient({x.x + e, x.y}, t).x; }, h) +
                           d4([&](double e) { return mc.pressure_gradient({x.x, x.y + e}, t).y; }, h);
        const double mass = (par.c0() + alpha * alpha / lambda) * p_t - alpha / lambda * xi_t - par.K() * lap;
        worst = std::max(worst, std::abs(mass - mc.mass_source(x, t)));
    }
    EXPECT_LE(worst, 1e-8) << GetParam().name;
}

TEST_P(StrongForm, DerivedFieldsConsistent)
{
    const PhysParams par = preset_params(GetParam());
    const ManufacturedCase mc(par);
    const double h = 1e-3;
    for (const auto& s : random_samples(50, 7)) {
        const Vec2 x = s.x;
        const auto g = mc.displacement_gradient(x, s.t);
        EXPECT_NEAR(g[0].x, d4([&](double e) { return mc.displacement({x.x + e, x.y}, s.t).x; }, h), 1e-9);
        EXPECT_NEAR(g[0].y, d4([&](double e) { return mc.displacement({x.x, x.y + e}, s.t).x; }, h), 1e-9);
        EXPECT_NEAR(g[1].x, d4([&](double e) { return mc.displacement({x.x + e, x.y}, s.t).y; }, h), 1e-9);
        EXPECT_NEAR(g[1].y, d4([&](double e) { return mc.displacement({x.x, x.y + e}, s.t).y; }, h), 1e-9);
        EXPECT_NEAR(mc.divergence(x, s.t), g[0].x + g[1].y, 1e-12);
        const Vec2 gp = mc.pressure_gradient(x, s.t);
        EXPECT_NEAR(gp.x, d4([&](double e) { return mc.pressure({x.x + e, x.y}, s.t); }, h), 1e-10);
        const Vec2 gxi = mc.total_pressure_gradient(x, s.t);
        EXPECT_NEAR(gxi.y, d4([&](double e) { return mc.total_pressure({x.x, x.y + e}, s.t); }, h), 1e-7);
        EXPECT_NEAR(mc.total_pressure(x, s.t), par.alpha() * mc.pressure(x, s.t) - par.lambda() * mc.divergence(x, s.t), 1e-12);
        // traction on a side with normal n is sigma n, flux is K grad p . n
        const Vec2 n{0.0, -1.0};
        const Vec2 tr = mc.traction(x, n, s.t);
        const double xi = mc.total_pressure(x, s.t);
        EXPECT_NEAR(tr.x, -par.mu() * (g[0].y + g[1].x), 1e-12);
        EXPECT_NEAR(tr.y, -(2 * par.mu() * g[1].y - xi), 1e-12);
        EXPECT_NEAR(mc.flux(x, n, s.t), -par.K() * gp.y, 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(Presets, StrongForm, ::testing::ValuesIn(presets()), [](const auto& info) { return info.param.name; });

TEST(Manufactured, BoundaryValuesVanishOnDirichletSides)
{
    const ManufacturedCase mc{PhysParams{}};
    for (double y : {0.0, 0.13, 0.5, 0.77, 1.0}) {
        for (double x : {0.0, 1.0}) {
            EXPECT_NEAR(mc.pressure({x, y}, 0.0), 0.0, 1e-15);
            EXPECT_NEAR(mc.displacement({x, y}, 0.0).x, 0.0, 1e-15);
            EXPECT_NEAR(mc.displacement({x, y}, 0.0).y, 0.0, 1e-15);
        }
    }
}

TEST(Manufactured, Presets)
{
    ASSERT_EQ(presets().size(), 4u);
    EXPECT_EQ(find_preset("nu0499").nu, 0.499);
    EXPECT_EQ(find_preset("k1em6").K, 1e-6);
    EXPECT_EQ(find_preset("c0zero").c0, 0.0);
    EXPECT_THROW(find_preset("nu04"), std::invalid_argument);
}

TEST(Errors, ZeroFieldsGiveZero)
{
    const auto mesh = std::make_shared<const TriMesh>(build_uniform(4));
    const auto p1 = std::make_shared<const Space>(mesh, SpaceKind::p1_scalar);
    const auto p2v = std::make_shared<const Space>(mesh, SpaceKind::p2_vector);
    const NormPair s = scalar_error(FieldVector(p1), [](Vec2) { return 0.0; }, [](Vec2) { return Vec2{}; });
    const NormPair v = vector_error(FieldVector(p2v), [](Vec2) { return Vec2{}; }, [](Vec2) { return std::array<Vec2, 2>{}; });
    EXPECT_EQ(s.l2, 0.0);
    EXPECT_EQ(s.h1, 0.0);
    EXPECT_EQ(v.l2, 0.0);
    EXPECT_EQ(v.h1, 0.0);
}

TEST(Errors, KnownOffset)
{
    // numeric 0 against exact 1 + 2x: L2^2 = int (1 + 2x)^2 = 13/3, H1^2 adds |grad|^2 = 4.
    const auto p1 = std::make_shared<const Space>(std::make_shared<const TriMesh>(build_uniform(3)), SpaceKind::p1_scalar);
    const NormPair e = scalar_error(FieldVector(p1), [](Vec2 x) { return 1.0 + 2.0 * x.x; }, [](Vec2) { return Vec2{2.0, 0.0}; });
    EXPECT_NEAR(e.l2, std::sqrt(13.0 / 3.0), 1e-13);
    EXPECT_NEAR(e.h1, std::sqrt(13.0 / 3.0 + 4.0), 1e-13);
}

TEST(Errors, InterpolationErrorRatio)
{
    const ManufacturedCase mc{PhysParams{}};
    auto u = [&](Vec2 x) { return mc.displacement(x, 0.0); };
    auto du = [&](Vec2 x) { return mc.displacement_gradient(x, 0.0); };
    auto p = [&](Vec2 x) { return mc.pressure(x, 0.0); };
    auto dp = [&](Vec2 x) { return mc.pressure_gradient(x, 0.0); };
    std::array<double, 2> eu{}, ep{};
    for (int k = 0; k < 2; ++k) {
        const auto mesh = std::make_shared<const TriMesh>(build_uniform(16 << k));
        const auto p2v = std::make_shared<const Space>(mesh, SpaceKind::p2_vector);
        const auto p1 = std::make_shared<const Space>(mesh, SpaceKind::p1_scalar);
        eu[static_cast<std::size_t>(k)] = vector_error(interpolate(p2v, VectorField(u)), u, du).l2;
        ep[static_cast<std::size_t>(k)] = scalar_error(interpolate(p1, ScalarField(p)), p, dp).l2;
        EXPECT_GT(eu[static_cast<std::size_t>(k)], 0.0);
    }
    EXPECT_NEAR(eu[0] / eu[1], 8.0, 0.5);
    EXPECT_NEAR(ep[0] / ep[1], 4.0, 0.3);
}

TEST(Study, CoarseCoupledRun)
{
    StudyConfig cfg;
    cfg.n0 = 4;
    cfg.levels = 3;
    const ErrorReport rep = run_study(cfg);
    ASSERT_EQ(rep.levels.size(), 3u);
    EXPECT_EQ(rep.levels[0].inv_h, 4);
    EXPECT_EQ(rep.levels[2].inv_h, 16);
    for (std::size_t c = 0; c < kErrorColumns.size(); ++c) {
        EXPECT_FALSE(rep.rate(0, c).has_value());
        EXPECT_LT(rep.levels[2].errors.as_array()[c], rep.levels[1].errors.as_array()[c]);
        EXPECT_LT(rep.levels[1].errors.as_array()[c], rep.levels[0].errors.as_array()[c]);
    }
    EXPECT_GT(*rep.rate(2, 0), 1.5);
    EXPECT_FALSE(rep.stats().tainted());
    EXPECT_EQ(rep.stats().solves, 30);
}

TEST(Study, CsvFormatAndDeterminism)
{
    StudyConfig cfg;
    cfg.n0 = 4;
    cfg.levels = 2;
    std::ostringstream a, b;
    write_csv(a, run_study(cfg));
    write_csv(b, run_study(cfg));
    EXPECT_EQ(a.str(), b.str());
    std::istringstream lines(a.str());
    std::string header, first, second;
    std::getline(lines, header);
    std::getline(lines, first);
    std::getline(lines, second);
    EXPECT_EQ(header,
              "level,inv_h,err_L2_u,rate_L2_u,err_H1_u,rate_H1_u,err_L2_xi,rate_L2_xi,err_H1_xi,rate_H1_xi,err_L2_p,rate_L2_p,err_H1_p,rate_H1_p");
    EXPECT_EQ(first.rfind("0,4,", 0), 0u);
    EXPECT_NE(first.find(",,"), std::string::npos);  // empty rate on the first level
    EXPECT_EQ(format_error(1.0634e-3), "1.063e-03");
    EXPECT_EQ(format_rate(2.0949), "2.09");
}

TEST(Study, FailureNamesLevel)
{
    StudyConfig cfg;
    cfg.n0 = 4;
    cfg.levels = 1;
    cfg.algorithm = Algorithm::iterative;
    cfg.params.storage_c0 = 0.0;
    cfg.control.tol = 1e-15;
    cfg.control.max_iterations = 2;
    try {
        (void)run_study(cfg);
        FAIL() << "expected failure";
    } catch (const std::runtime_error& e) {
        EXPECT_NE(std::string(e.what()).find("1/h = 4"), std::string::npos) << e.what();
    }
}

}  // namespace
}  // namespace biotsplit
