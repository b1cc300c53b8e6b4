#pragma once

#include <array>
#include <vector>

namespace biotsplit {

struct QuadraturePoint {
    std::array<double, 3> barycentric;
    double weight;  ///< relative to the reference triangle of area 1/2
};

/// Symmetric rule on the reference triangle {(0,0), (1,0), (0,1)}.
/// Weights sum to 1/2.
struct QuadratureRule {
    int degree = 0;
    std::vector<QuadraturePoint> points;
};

/// Cheapest stored rule exact for polynomials of degree `min_degree`.
/// Supported degrees are 1..5; the 7-point degree-5 rule is the default for
/// every volume integral in the library. Throws std::invalid_argument
/// outside that range.
const QuadratureRule& triangle_rule(int min_degree);

inline constexpr int kDefaultQuadratureDegree = 5;

struct SegmentPoint {
    double s;       ///< position in [0, 1]
    double weight;  ///< weights sum to 1
};

/// 5-point Gauss-Legendre rule on [0, 1] (exact to degree 9).
const std::array<SegmentPoint, 5>& segment_rule();

}  // namespace biotsplit
