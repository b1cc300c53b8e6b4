#include "biotsplit/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace biotsplit {

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

const std::vector<Preset>& presets()
{
    static const std::vector<Preset> table{
        {"nu03", 0.3, 1.0, 1.0},
        {"nu0499", 0.499, 1.0, 1.0},
        {"k1em6", 0.3, 1.0, 1e-6},
        {"c0zero", 0.3, 0.0, 1.0},
    };
    return table;
}

const Preset& find_preset(const std::string& name)
{
    std::string known;
    for (const auto& p : presets()) {
        if (p.name == name) return p;
        known += (known.empty() ? "" : ", ") + p.name;
    }
    throw std::invalid_argument("unknown preset '" + name + "' (known: " + known + ")");
}

ParameterSet apply_preset(ParameterSet base, const Preset& preset)
{
    base.poisson_ratio = preset.nu;
    base.storage_c0 = preset.c0;
    base.conductivity = preset.K;
    return base;
}

ManufacturedCase::ManufacturedCase(const PhysParams& params)
    : params_(params), inv_ml_(1.0 / (params.mu() + params.lambda()))
{
}

Vec2 ManufacturedCase::displacement(Vec2 x, double t) const
{
    const double e = std::exp(-t);
    const double s = std::sin(pi * x.x) * std::sin(pi * x.y);
    return {e * (std::sin(2 * pi * x.y) * (std::cos(2 * pi * x.x) - 1.0) + s * inv_ml_),
            e * (std::sin(2 * pi * x.x) * (1.0 - std::cos(2 * pi * x.y)) + s * inv_ml_)};
}

std::array<Vec2, 2> ManufacturedCase::displacement_gradient(Vec2 x, double t) const
{
    const double e = std::exp(-t);
    const double sx = std::sin(pi * x.x), cx = std::cos(pi * x.x);
    const double sy = std::sin(pi * x.y), cy = std::cos(pi * x.y);
    const double s2x = std::sin(2 * pi * x.x), c2x = std::cos(2 * pi * x.x);
    const double s2y = std::sin(2 * pi * x.y), c2y = std::cos(2 * pi * x.y);
    const double dx_s = pi * cx * sy * inv_ml_;
    const double dy_s = pi * sx * cy * inv_ml_;
    return {Vec2{e * (-2 * pi * s2y * s2x + dx_s), e * (2 * pi * c2y * (c2x - 1.0) + dy_s)},
            Vec2{e * (2 * pi * c2x * (1.0 - c2y) + dx_s), e * (2 * pi * s2x * s2y + dy_s)}};
}

double ManufacturedCase::divergence(Vec2 x, double t) const
{
    return std::exp(-t) * pi * std::sin(pi * (x.x + x.y)) * inv_ml_;
}

double ManufacturedCase::pressure(Vec2 x, double t) const
{
    return std::exp(-t) * std::sin(pi * x.x) * std::sin(pi * x.y);
}

Vec2 ManufacturedCase::pressure_gradient(Vec2 x, double t) const
{
    const double e = std::exp(-t);
    return {e * pi * std::cos(pi * x.x) * std::sin(pi * x.y), e * pi * std::sin(pi * x.x) * std::cos(pi * x.y)};
}

double ManufacturedCase::total_pressure(Vec2 x, double t) const
{
    return params_.alpha() * pressure(x, t) - params_.lambda() * divergence(x, t);
}

Vec2 ManufacturedCase::total_pressure_gradient(Vec2 x, double t) const
{
    const Vec2 gp = pressure_gradient(x, t);
    const double gd = std::exp(-t) * pi * pi * std::cos(pi * (x.x + x.y)) * inv_ml_;
    const double a = params_.alpha();
    const double l = params_.lambda();
    return {a * gp.x - l * gd, a * gp.y - l * gd};
}

Vec2 ManufacturedCase::body_force(Vec2 x, double t) const
{
    const double e = std::exp(-t);
    const double mu = params_.mu();
    const double a = params_.alpha();
    const double sx = std::sin(pi * x.x), cx = std::cos(pi * x.x);
    const double sy = std::sin(pi * x.y), cy = std::cos(pi * x.y);
    const double cxy = std::cos(pi * (x.x + x.y));
    const double pi2 = pi * pi;
    return {e * (4 * mu * pi2 * std::sin(2 * pi * x.y) * (2 * std::cos(2 * pi * x.x) - 1.0) +
                 (2 * mu * pi2 * inv_ml_ * sx + a * pi * cx) * sy - pi2 * cxy),
            e * (4 * mu * pi2 * std::sin(2 * pi * x.x) * (1.0 - 2 * std::cos(2 * pi * x.y)) +
                 (2 * mu * pi2 * inv_ml_ * sy + a * pi * cy) * sx - pi2 * cxy)};
}

double ManufacturedCase::mass_source(Vec2 x, double t) const
{
    const double e = std::exp(-t);
    const double s = std::sin(pi * x.x) * std::sin(pi * x.y);
    return e * ((-params_.c0() + 2 * pi * pi * params_.K()) * s -
                params_.alpha() * pi * std::sin(pi * (x.x + x.y)) * inv_ml_);
}

Vec2 ManufacturedCase::traction(Vec2 x, Vec2 normal, double t) const
{
    const auto g = displacement_gradient(x, t);
    const double mu = params_.mu();
    const double xi = total_pressure(x, t);
    const double sxx = 2 * mu * g[0].x - xi;
    const double syy = 2 * mu * g[1].y - xi;
    const double sxy = mu * (g[0].y + g[1].x);
    return {sxx * normal.x + sxy * normal.y, sxy * normal.x + syy * normal.y};
}

double ManufacturedCase::flux(Vec2 x, Vec2 normal, double t) const
{
    return params_.K() * dot(pressure_gradient(x, t), normal);
}

ProblemData ManufacturedCase::problem_data() const
{
    const ManufacturedCase self = *this;
    ProblemData d = frozen_homogeneous_data();
    d.load_factor = [](double t) { return std::exp(-t); };
    d.displacement_bc = [self](Vec2 x) { return self.displacement(x, 0.0); };
    d.pressure_bc = [self](Vec2 x) { return self.pressure(x, 0.0); };
    d.boundary_factor = [](double t) { return std::exp(-t); };
    return d;
}

ProblemData ManufacturedCase::frozen_homogeneous_data() const
{
    // Copies of *this keep the closures valid beyond the case's lifetime.
    const ManufacturedCase self = *this;
    ProblemData d;
    d.body_force = [self](Vec2 x) { return self.body_force(x, 0.0); };
    d.traction = [self](Vec2 x, Vec2 n) { return self.traction(x, n, 0.0); };
    d.mass_source = [self](Vec2 x) { return self.mass_source(x, 0.0); };
    d.flux = [self](Vec2 x, Vec2 n) { return self.flux(x, n, 0.0); };
    return d;
}

BiotState ManufacturedCase::interpolated_state(const DiscreteSystem& sys, double t) const
{
    BiotState s;
    s.u = interpolate(sys.displacement_space(), VectorField([&](Vec2 x) { return displacement(x, t); }));
    s.xi = interpolate(sys.total_pressure_space(), ScalarField([&](Vec2 x) { return total_pressure(x, t); }));
    s.p = interpolate(sys.pressure_space(), ScalarField([&](Vec2 x) { return pressure(x, t); }));
    s.t = t;
    return s;
}

BiotState ManufacturedCase::homogeneous_initial_state(const DiscreteSystem& sys) const
{
    BiotState s = interpolated_state(sys, 0.0);
    for (Index d : sys.displacement_space()->constrained_dofs()) s.u.values[static_cast<std::size_t>(d)] = 0.0;
    for (Index d : sys.pressure_space()->constrained_dofs()) s.p.values[static_cast<std::size_t>(d)] = 0.0;
    s.xi.values = sys.consistent_total_pressure(s.u.values, s.p.values);
    return s;
}

}  // namespace biotsplit
