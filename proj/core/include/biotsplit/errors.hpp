#pragma once

#include <array>
#include <functional>

#include "biotsplit/biot_system.hpp"
#include "biotsplit/manufactured.hpp"
#include "biotsplit/space.hpp"

namespace biotsplit {

/// L2 error and full H1 error (L2 part plus seminorm).
struct NormPair {
    double l2 = 0.0;
    double h1 = 0.0;
};

/// Errors by per-element degree-5 quadrature.
NormPair scalar_error(const FieldVector& field, const ScalarField& exact, const VectorField& exact_gradient);
NormPair vector_error(const FieldVector& field, const VectorField& exact,
                      const std::function<std::array<Vec2, 2>(Vec2)>& exact_gradient);

/// The six numbers reported per mesh level.
struct FieldErrors {
    NormPair u;
    NormPair xi;
    NormPair p;

    /// Column order L2 u, H1 u, L2 xi, H1 xi, L2 p, H1 p.
    [[nodiscard]] std::array<double, 6> as_array() const { return {u.l2, u.h1, xi.l2, xi.h1, p.l2, p.h1}; }
};

FieldErrors compute_errors(const BiotState& state, const ManufacturedCase& exact);

}  // namespace biotsplit
