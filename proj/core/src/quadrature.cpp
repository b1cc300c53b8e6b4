#include "biotsplit/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace biotsplit {

namespace {

QuadratureRule centroid_rule()
{
    return {1, {{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 0.5}}};
}

QuadratureRule three_point_rule()
{
    constexpr double a = 2.0 / 3.0;
    constexpr double b = 1.0 / 6.0;
    constexpr double w = 1.0 / 6.0;
    return {2, {{{a, b, b}, w}, {{b, a, b}, w}, {{b, b, a}, w}}};
}

// Strang-Fix / Dunavant degree-4 rule.
QuadratureRule six_point_rule()
{
    constexpr double a1 = 0.445948490915964886318329253883;
    constexpr double a2 = 0.091576213509770743459571463402;
    constexpr double w1 = 0.223381589678011465944640422582 / 2.0;
    constexpr double w2 = 0.109951743655321867388692910751 / 2.0;
    const double b1 = 1.0 - 2.0 * a1;
    const double b2 = 1.0 - 2.0 * a2;
    return {4,
            {{{b1, a1, a1}, w1}, {{a1, b1, a1}, w1}, {{a1, a1, b1}, w1},
             {{b2, a2, a2}, w2}, {{a2, b2, a2}, w2}, {{a2, a2, b2}, w2}}};
}

// Radon's 7-point degree-5 rule.
QuadratureRule seven_point_rule()
{
    const double r = std::sqrt(15.0);
    const double a1 = (6.0 - r) / 21.0;
    const double a2 = (6.0 + r) / 21.0;
    const double w0 = 9.0 / 80.0;
    const double w1 = (155.0 - r) / 2400.0;
    const double w2 = (155.0 + r) / 2400.0;
    const double b1 = 1.0 - 2.0 * a1;
    const double b2 = 1.0 - 2.0 * a2;
    return {5,
            {{{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, w0},
             {{b1, a1, a1}, w1}, {{a1, b1, a1}, w1}, {{a1, a1, b1}, w1},
             {{b2, a2, a2}, w2}, {{a2, b2, a2}, w2}, {{a2, a2, b2}, w2}}};
}

}  // namespace

const QuadratureRule& triangle_rule(int min_degree)
{
    static const QuadratureRule rule1 = centroid_rule();
    static const QuadratureRule rule2 = three_point_rule();
    static const QuadratureRule rule4 = six_point_rule();
    static const QuadratureRule rule5 = seven_point_rule();
    switch (min_degree) {
    case 1: return rule1;
    case 2: return rule2;
    case 3:
    case 4: return rule4;
    case 5: return rule5;
    default:
        throw std::invalid_argument("triangle_rule: degree " + std::to_string(min_degree) +
                                    " unsupported (supported: 1..5)");
    }
}

const std::array<SegmentPoint, 5>& segment_rule()
{
    static const std::array<SegmentPoint, 5> rule = [] {
        const double r = std::sqrt(10.0 / 7.0);
        const double x1 = std::sqrt(5.0 - 2.0 * r) / 3.0;
        const double x2 = std::sqrt(5.0 + 2.0 * r) / 3.0;
        const double w0 = 128.0 / 225.0;
        const double w1 = (322.0 + 13.0 * std::sqrt(70.0)) / 900.0;
        const double w2 = (322.0 - 13.0 * std::sqrt(70.0)) / 900.0;
        // Map [-1, 1] onto [0, 1].
        return std::array<SegmentPoint, 5>{{{0.5 * (1.0 - x2), 0.5 * w2},
                                            {0.5 * (1.0 - x1), 0.5 * w1},
                                            {0.5, 0.5 * w0},
                                            {0.5 * (1.0 + x1), 0.5 * w1},
                                            {0.5 * (1.0 + x2), 0.5 * w2}}};
    }();
    return rule;
}

}  // namespace biotsplit
