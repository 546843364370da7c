#pragma once

#include <utility>
#include <vector>

#include "bbtspec/charfun.hpp"

namespace bbt {

using LatticePoint = std::pair<int, int>;

/// Extreme points of a monomial support, counterclockwise, starting from the
/// lowest-then-leftmost vertex. No three consecutive vertices are collinear.
struct NewtonPolygon {
    std::vector<LatticePoint> vertices;

    bool is_triangle(int p, int q, int k) const;
};

NewtonPolygon convex_hull(std::vector<LatticePoint> points);
NewtonPolygon newton_polygon(const CharFunction& f);

/// Every support point (d, e) satisfies e >= 0, k d + q e <= q k and
/// k d - p e >= -p k.
bool support_in_triangle(const CharFunction& f);

}  // namespace bbt
