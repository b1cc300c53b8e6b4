#include "biotsplit/basis.hpp"

#include <cmath>
#include <stdexcept>

namespace biotsplit {

namespace {

constexpr Vec2 kLambdaGrad[3] = {{-1.0, -1.0}, {1.0, 0.0}, {0.0, 1.0}};

void check_barycentric(const std::array<double, 3>& l)
{
    constexpr double tol = 1e-12;
    if (l[0] < -tol || l[1] < -tol || l[2] < -tol || std::abs(l[0] + l[1] + l[2] - 1.0) > tol) {
        throw std::invalid_argument("eval_basis: point is not a barycentric coordinate triple");
    }
}

}  // namespace

const char* to_string(SpaceKind kind)
{
    switch (kind) {
    case SpaceKind::p1_scalar: return "P1";
    case SpaceKind::p2_scalar: return "P2";
    case SpaceKind::p2_vector: return "P2-vector";
    }
    return "unknown";
}

int nodes_per_element(SpaceKind kind)
{
    switch (kind) {
    case SpaceKind::p1_scalar: return 3;
    case SpaceKind::p2_scalar:
    case SpaceKind::p2_vector: return 6;
    }
    throw std::invalid_argument("nodes_per_element: unknown space kind");
}

BasisValues eval_basis(SpaceKind kind, const std::array<double, 3>& l)
{
    check_barycentric(l);
    BasisValues out;
    switch (kind) {
    case SpaceKind::p1_scalar:
        out.count = 3;
        for (int k = 0; k < 3; ++k) {
            out.values[k] = l[k];
            out.gradients[k] = kLambdaGrad[k];
        }
        return out;
    case SpaceKind::p2_scalar:
    case SpaceKind::p2_vector:
        out.count = 6;
        for (int k = 0; k < 3; ++k) {
            out.values[k] = l[k] * (2.0 * l[k] - 1.0);
            out.gradients[k] = (4.0 * l[k] - 1.0) * kLambdaGrad[k];
        }
        for (int k = 0; k < 3; ++k) {
            const int a = k;
            const int b = (k + 1) % 3;
            out.values[3 + k] = 4.0 * l[a] * l[b];
            out.gradients[3 + k] = 4.0 * (l[b] * kLambdaGrad[a] + l[a] * kLambdaGrad[b]);
        }
        return out;
    }
    throw std::invalid_argument("eval_basis: unknown space kind");
}

ElementMap::ElementMap(const std::array<Vec2, 3>& v)
    : origin_(v[0]),
      j00_(v[1].x - v[0].x),
      j01_(v[2].x - v[0].x),
      j10_(v[1].y - v[0].y),
      j11_(v[2].y - v[0].y),
      det_(j00_ * j11_ - j01_ * j10_)
{
    if (!(det_ > 0.0)) throw std::invalid_argument("ElementMap: degenerate or clockwise triangle");
}

Vec2 ElementMap::to_physical(const std::array<double, 3>& l) const
{
    return {origin_.x + j00_ * l[1] + j01_ * l[2], origin_.y + j10_ * l[1] + j11_ * l[2]};
}

Vec2 ElementMap::physical_gradient(Vec2 g) const
{
    // J^{-T} = (1/det) [[j11, -j10], [-j01, j00]]
    return {(j11_ * g.x - j10_ * g.y) / det_, (-j01_ * g.x + j00_ * g.y) / det_};
}

}  // namespace biotsplit
