#include "biotsplit/biot_system.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "biotsplit/linalg.hpp"

namespace biotsplit {

namespace {

double factor_at(const TimeFactor& f, double t) { return f ? f(t) : 1.0; }

std::vector<double> scaled(const std::vector<double>& v, double s)
{
    std::vector<double> out(v);
    for (double& x : out) x *= s;
    return out;
}

}  // namespace

DiscreteSystem::DiscreteSystem(std::shared_ptr<const TriMesh> mesh, const PhysParams& params, ProblemData data)
    : mesh_(std::move(mesh)), params_(params), data_(std::move(data))
{
    if (!mesh_) throw std::invalid_argument("DiscreteSystem: null mesh");
    const std::vector<BoundaryTag> dirichlet(kDirichletSides.begin(), kDirichletSides.end());
    u_space_ = std::make_shared<Space>(mesh_, SpaceKind::p2_vector, dirichlet);
    xi_space_ = std::make_shared<Space>(mesh_, SpaceKind::p1_scalar);
    p_space_ = std::make_shared<Space>(mesh_, SpaceKind::p1_scalar, dirichlet);

    elasticity_ = assemble_form(FormKind::elasticity, *u_space_, *u_space_);
    coupling_ = assemble_form(FormKind::div_coupling, *xi_space_, *u_space_);
    mass_ = assemble_form(FormKind::mass, *p_space_, *p_space_);
    stiffness_ = assemble_form(FormKind::stiffness, *p_space_, *p_space_);

    displacement_profile_.assign(static_cast<std::size_t>(nu()), 0.0);
    if (data_.body_force) displacement_profile_ = assemble_volume_load(*u_space_, data_.body_force);
    if (data_.traction) axpy(1.0, assemble_boundary_load(*u_space_, data_.traction, kNeumannSides), displacement_profile_);

    pressure_profile_.assign(static_cast<std::size_t>(np()), 0.0);
    if (data_.mass_source) pressure_profile_ = assemble_volume_load(*p_space_, data_.mass_source);
    if (data_.flux) axpy(1.0, assemble_boundary_load(*p_space_, data_.flux, kNeumannSides), pressure_profile_);

    displacement_bc_profile_.assign(static_cast<std::size_t>(nu()), 0.0);
    if (data_.displacement_bc) displacement_bc_profile_ = dirichlet_values(*u_space_, data_.displacement_bc);
    pressure_bc_profile_.assign(static_cast<std::size_t>(np()), 0.0);
    if (data_.pressure_bc) pressure_bc_profile_ = dirichlet_values(*p_space_, data_.pressure_bc);
}

std::vector<double> DiscreteSystem::displacement_load(double t) const
{
    return scaled(displacement_profile_, factor_at(data_.load_factor, t));
}

std::vector<double> DiscreteSystem::pressure_load(double t) const
{
    return scaled(pressure_profile_, factor_at(data_.load_factor, t));
}

std::vector<double> DiscreteSystem::displacement_bc(double t) const
{
    return scaled(displacement_bc_profile_, factor_at(data_.boundary_factor, t));
}

std::vector<double> DiscreteSystem::pressure_bc(double t) const
{
    return scaled(pressure_bc_profile_, factor_at(data_.boundary_factor, t));
}

SparseMatrix DiscreteSystem::stokes_matrix() const
{
    const double mu = params_.mu();
    const double lambda = params_.lambda();
    const SparseMatrix bt = coupling_.transpose();
    return BlockMatrixBuilder(nu() + nxi(), nu() + nxi())
        .add(0, 0, elasticity_, 2.0 * mu)
        .add(0, nu(), coupling_, -1.0)
        .add(nu(), 0, bt, -1.0)
        .add(nu(), nu(), mass_, -1.0 / lambda)
        .build();
}

std::vector<char> DiscreteSystem::stokes_mask() const
{
    std::vector<char> mask(u_space_->constrained_mask());
    mask.resize(static_cast<std::size_t>(nu() + nxi()), 0);
    return mask;
}

SparseMatrix DiscreteSystem::pressure_matrix() const
{
    return add(mass_, stiffness_, params_.storage(), params_.K() * params_.dt());
}

SparseMatrix DiscreteSystem::coupled_matrix() const
{
    const double mu = params_.mu();
    const double lambda = params_.lambda();
    const double a_l = params_.alpha() / lambda;
    const SparseMatrix bt = coupling_.transpose();
    const Index ox = nu();
    const Index op = nu() + nxi();
    return BlockMatrixBuilder(op + np(), op + np())
        .add(0, 0, elasticity_, 2.0 * mu)
        .add(0, ox, coupling_, -1.0)
        .add(ox, 0, bt, -1.0)
        .add(ox, ox, mass_, -1.0 / lambda)
        .add(ox, op, mass_, a_l)
        .add(op, ox, mass_, a_l)
        .add(op, op, mass_, -params_.storage())
        .add(op, op, stiffness_, -params_.K() * params_.dt())
        .build();
}

std::vector<char> DiscreteSystem::coupled_mask() const
{
    std::vector<char> mask(u_space_->constrained_mask());
    mask.resize(static_cast<std::size_t>(nu() + nxi()), 0);
    const auto& pm = p_space_->constrained_mask();
    mask.insert(mask.end(), pm.begin(), pm.end());
    return mask;
}

double DiscreteSystem::l2_norm(std::span<const double> scalar) const
{
    return std::sqrt(std::max(0.0, mass_.bilinear(scalar, scalar)));
}

double DiscreteSystem::strain_norm(std::span<const double> displacement) const
{
    return std::sqrt(std::max(0.0, elasticity_.bilinear(displacement, displacement)));
}

BiotState DiscreteSystem::make_state(std::vector<double> u, std::vector<double> xi, std::vector<double> p, double t) const
{
    BiotState s;
    s.u = FieldVector(u_space_, std::move(u));
    s.xi = FieldVector(xi_space_, std::move(xi));
    s.p = FieldVector(p_space_, std::move(p));
    s.t = t;
    return s;
}

BiotState DiscreteSystem::zero_state(double t) const
{
    return make_state(std::vector<double>(static_cast<std::size_t>(nu()), 0.0),
                      std::vector<double>(static_cast<std::size_t>(nxi()), 0.0),
                      std::vector<double>(static_cast<std::size_t>(np()), 0.0), t);
}

std::vector<double> DiscreteSystem::consistent_total_pressure(std::span<const double> u, std::span<const double> p) const
{
    std::vector<double> rhs = mass_ * p;
    for (double& v : rhs) v *= params_.alpha();
    axpy(-params_.lambda(), coupling_.multiply_transpose(u), rhs);
    return lu_factor(mass_).solve(rhs);
}

}  // namespace biotsplit
