#include "biotsplit/params.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace biotsplit {

namespace {

[[noreturn]] void reject(const char* name, double value, const char* range)
{
    std::ostringstream msg;
    msg << "invalid " << name << " = " << value << ": must satisfy " << range;
    throw std::invalid_argument(msg.str());
}

}  // namespace

PhysParams::PhysParams(const ParameterSet& set) : set_(set)
{
    if (!(set.poisson_ratio > 0.0 && set.poisson_ratio < 0.5)) reject("nu", set.poisson_ratio, "0 < nu < 0.5");
    if (!(set.youngs_modulus > 0.0)) reject("E", set.youngs_modulus, "E > 0");
    if (!(set.biot_alpha > 0.0)) reject("alpha", set.biot_alpha, "alpha > 0");
    if (!(set.storage_c0 >= 0.0)) reject("c0", set.storage_c0, "c0 >= 0");
    if (!(set.conductivity > 0.0)) reject("K", set.conductivity, "K > 0");
    if (!(set.dt > 0.0)) reject("dt", set.dt, "dt > 0");
    if (!(set.final_time > 0.0)) reject("T", set.final_time, "T > 0");
    const double E = set.youngs_modulus;
    const double nu = set.poisson_ratio;
    lambda_ = E * nu / ((1.0 + nu) * (1.0 - 2.0 * nu));
    mu_ = E / (2.0 * (1.0 + nu));
}

double PhysParams::contraction_factor() const noexcept
{
    const double coupling = set_.biot_alpha * set_.biot_alpha / lambda_;
    return coupling / (set_.storage_c0 + coupling);
}

int PhysParams::num_steps() const
{
    const double ratio = set_.final_time / set_.dt;
    const double steps = std::round(ratio);
    if (steps < 1.0 || std::abs(ratio - steps) > 1e-9 * ratio) {
        std::ostringstream msg;
        msg << "T = " << set_.final_time << " is not a whole multiple of dt = " << set_.dt;
        throw std::invalid_argument(msg.str());
    }
    return static_cast<int>(steps);
}

PhysParams PhysParams::with_dt(double dt) const
{
    ParameterSet s = set_;
    s.dt = dt;
    return PhysParams(s);
}

}  // namespace biotsplit
