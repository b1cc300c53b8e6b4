#pragma once

#include <array>

#include "biotsplit/mesh.hpp"

namespace biotsplit {

enum class SpaceKind {
    p1_scalar,
    p2_scalar,
    p2_vector,
};

const char* to_string(SpaceKind kind);

/// Shape functions per element for the scalar element underlying `kind`
/// (3 for P1, 6 for P2; a P2 vector space uses the scalar P2 functions per
/// component).
int nodes_per_element(SpaceKind kind);

/// Shape function values and gradients with respect to the reference
/// coordinates (r, s), where the barycentric coordinates are
/// (1 - r - s, r, s).
///
/// Node order: vertices 0, 1, 2, then for P2 the midpoints of local edges
/// (0,1), (1,2), (2,0).
struct BasisValues {
    int count = 0;
    std::array<double, 6> values{};
    std::array<Vec2, 6> gradients{};
};

/// Throws std::invalid_argument for an unknown kind or a point that is not
/// a valid barycentric triple (negative entries, or not summing to 1).
BasisValues eval_basis(SpaceKind kind, const std::array<double, 3>& barycentric);

/// Affine map from the reference triangle onto a mesh triangle.
class ElementMap {
public:
    explicit ElementMap(const std::array<Vec2, 3>& vertices);

    [[nodiscard]] Vec2 to_physical(const std::array<double, 3>& barycentric) const;
    /// Pushes a reference-coordinate gradient forward (J^{-T} g).
    [[nodiscard]] Vec2 physical_gradient(Vec2 reference_gradient) const;
    /// |det J| = 2 * area.
    [[nodiscard]] double jacobian_determinant() const noexcept { return det_; }
    [[nodiscard]] double area() const noexcept { return 0.5 * det_; }

private:
    Vec2 origin_;
    double j00_, j01_, j10_, j11_;
    double det_;
};

}  // namespace biotsplit
