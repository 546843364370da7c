#include "bbtspec/newton.hpp"

#include <algorithm>
#include <set>

#include "bbtspec/errors.hpp"

namespace bbt {

namespace {

long cross(const LatticePoint& o, const LatticePoint& a, const LatticePoint& b) {
    return static_cast<long>(a.first - o.first) * (b.second - o.second) -
           static_cast<long>(a.second - o.second) * (b.first - o.first);
}

}  // namespace

NewtonPolygon convex_hull(std::vector<LatticePoint> pts) {
    // Andrew's monotone chain on (x, y) order; strict turns drop collinear points.
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return NewtonPolygon{pts};

    std::vector<LatticePoint> hull(2 * pts.size());
    std::size_t n = 0;
    for (const auto& pt : pts) {
        while (n >= 2 && cross(hull[n - 2], hull[n - 1], pt) <= 0) --n;
        hull[n++] = pt;
    }
    for (std::size_t i = pts.size() - 1, lower = n + 1; i-- > 0;) {
        while (n >= lower && cross(hull[n - 2], hull[n - 1], pts[i]) <= 0) --n;
        hull[n++] = pts[i];
    }
    hull.resize(n - 1);

    // start at the lowest, then leftmost vertex
    auto start = std::min_element(hull.begin(), hull.end(), [](const auto& a, const auto& b) {
        return a.second != b.second ? a.second < b.second : a.first < b.first;
    });
    std::rotate(hull.begin(), start, hull.end());
    return NewtonPolygon{hull};
}

NewtonPolygon newton_polygon(const CharFunction& f) {
    if (f.coeffs.is_zero()) throw DegenerateError("Newton polygon of the zero polynomial");
    return convex_hull(f.coeffs.support());
}

bool NewtonPolygon::is_triangle(int p, int q, int k) const {
    if (vertices.size() != 3) return false;
    std::set<LatticePoint> have(vertices.begin(), vertices.end());
    return have == std::set<LatticePoint>{{-p, 0}, {q, 0}, {0, k}};
}

bool support_in_triangle(const CharFunction& f) {
    const long k = f.k, p = f.p, q = f.q;
    for (const auto& [d, e] : f.coeffs.support()) {
        if (e < 0) return false;
        if (k * d + q * e > q * k) return false;
        if (k * d - p * e < -p * k) return false;
    }
    return true;
}

}  // namespace bbt
