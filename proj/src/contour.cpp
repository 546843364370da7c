#include "bbtspec/contour.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <unordered_map>

#include "bbtspec/errors.hpp"

namespace bbt {

namespace {

// crossing-edge ids: horizontal edge (i,j)-(i+1,j) and vertical (i,j)-(i,j+1)
struct EdgeIds {
    int nx, ny;
    long h(int i, int j) const { return static_cast<long>(j) * (nx - 1) + i; }
    long v(int i, int j) const { return static_cast<long>(nx - 1) * ny + static_cast<long>(i) * (ny - 1) + j; }
};

double seg_dist(cplx p, cplx a, cplx b) {
    const cplx d = b - a;
    const double l2 = std::norm(d);
    double t = l2 > 0.0 ? ((p - a) * std::conj(d)).real() / l2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

double cross(cplx a, cplx b) { return a.real() * b.imag() - a.imag() * b.real(); }

bool segments_touch(cplx a, cplx b, cplx c, cplx d) {
    const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
    const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return true;
    auto on = [](cplx p, cplx q, cplx r, double c0) {
        return c0 == 0.0 && std::min(p.real(), q.real()) <= r.real() && r.real() <= std::max(p.real(), q.real()) &&
               std::min(p.imag(), q.imag()) <= r.imag() && r.imag() <= std::max(p.imag(), q.imag());
    };
    return on(a, b, c, d1) || on(a, b, d, d2) || on(c, d, a, d3) || on(c, d, b, d4);
}

}  // namespace

std::vector<Chain> march(const ScalarField& f, const std::function<double(cplx)>& center, bool bottom_is_axis) {
    const int nx = f.nx(), ny = f.ny();
    std::vector<Chain> out;
    if (nx < 2 || ny < 2) return out;
    const EdgeIds ids{nx, ny};
    auto pos = [&](int i, int j) { return f.value(i, j) > 0.0; };

    // crossing points
    std::unordered_map<long, cplx> point;
    auto add_h = [&](int i, int j) {
        if (f.masked(i, j) || f.masked(i + 1, j) || pos(i, j) == pos(i + 1, j)) return;
        const double a = f.value(i, j), b = f.value(i + 1, j);
        const double t = a / (a - b);
        point[ids.h(i, j)] = {f.xs[static_cast<std::size_t>(i)] + t * (f.xs[static_cast<std::size_t>(i + 1)] - f.xs[static_cast<std::size_t>(i)]),
                              f.ys[static_cast<std::size_t>(j)]};
    };
    auto add_v = [&](int i, int j) {
        if (f.masked(i, j) || f.masked(i, j + 1) || pos(i, j) == pos(i, j + 1)) return;
        const double a = f.value(i, j), b = f.value(i, j + 1);
        const double t = a / (a - b);
        point[ids.v(i, j)] = {f.xs[static_cast<std::size_t>(i)],
                              f.ys[static_cast<std::size_t>(j)] + t * (f.ys[static_cast<std::size_t>(j + 1)] - f.ys[static_cast<std::size_t>(j)])};
    };
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i) add_h(i, j);
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j + 1 < ny; ++j) add_v(i, j);

    // segments per active cell
    std::unordered_map<long, std::vector<long>> adj;
    auto link = [&](long a, long b) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (int j = 0; j + 1 < ny; ++j)
        for (int i = 0; i + 1 < nx; ++i) {
            if (f.masked(i, j) || f.masked(i + 1, j) || f.masked(i + 1, j + 1) || f.masked(i, j + 1)) continue;
            const long e0 = ids.h(i, j), e1 = ids.v(i + 1, j), e2 = ids.h(i, j + 1), e3 = ids.v(i, j);
            std::vector<long> hit;
            for (long e : {e0, e1, e2, e3})
                if (point.count(e)) hit.push_back(e);
            if (hit.size() == 2) {
                link(hit[0], hit[1]);
            } else if (hit.size() == 4) {
                const cplx c((f.xs[static_cast<std::size_t>(i)] + f.xs[static_cast<std::size_t>(i + 1)]) / 2,
                             (f.ys[static_cast<std::size_t>(j)] + f.ys[static_cast<std::size_t>(j + 1)]) / 2);
                const double cv = center ? center(c)
                                         : 0.25 * (f.value(i, j) + f.value(i + 1, j) + f.value(i + 1, j + 1) + f.value(i, j + 1));
                if ((cv > 0.0) == pos(i, j)) {
                    // corner (i,j) joins the centre: cut off corners 1 and 3
                    link(e0, e1);
                    link(e2, e3);
                } else {
                    link(e0, e3);
                    link(e1, e2);
                }
            }
        }

    auto end_kind = [&](long e) {
        // which side of this crossing edge lacks an active cell
        const long nh = static_cast<long>(nx - 1) * ny;
        if (e < nh) {
            const int j = static_cast<int>(e / (nx - 1));
            if (j == 0) return bottom_is_axis ? EndKind::Axis : EndKind::Boundary;
            if (j == ny - 1) return EndKind::Boundary;
            return EndKind::Mask;
        }
        const long r = e - nh;
        const int i = static_cast<int>(r / (ny - 1));
        if (i == 0 || i == nx - 1) return EndKind::Boundary;
        return EndKind::Mask;
    };

    std::vector<long> keys;
    keys.reserve(point.size());
    for (const auto& kv : point) keys.push_back(kv.first);
    std::sort(keys.begin(), keys.end());
    std::unordered_map<long, bool> used;
    auto walk = [&](long start) {
        Chain c;
        long prev = -1, cur = start;
        for (;;) {
            used[cur] = true;
            c.points.push_back(point[cur]);
            long next = -1;
            for (long n : adj[cur])
                if (n != prev && !used[n]) {
                    next = n;
                    break;
                }
            if (next < 0) {
                // closed if we are back next to the start
                const auto& a = adj[cur];
                if (cur != start && std::find(a.begin(), a.end(), start) != a.end() && adj[start].size() == 2) {
                    c.closed = true;
                    c.points.push_back(point[start]);
                }
                break;
            }
            prev = cur;
            cur = next;
        }
        return std::pair{c, cur};
    };
    for (long k : keys) {
        if (used[k] || adj[k].size() != 1) continue;
        auto [c, last] = walk(k);
        c.start = end_kind(k);
        c.finish = end_kind(last);
        out.push_back(std::move(c));
    }
    for (long k : keys) {
        if (used[k]) continue;
        if (adj[k].empty()) {
            // isolated crossing on a grid edge with no active cell either side
            used[k] = true;
            continue;
        }
        auto [c, last] = walk(k);
        (void)last;
        out.push_back(std::move(c));
    }
    return out;
}

double arc_length(const std::vector<cplx>& p) {
    double s = 0.0;
    for (std::size_t i = 1; i < p.size(); ++i) s += std::abs(p[i] - p[i - 1]);
    return s;
}

int winding_number(const std::vector<cplx>& poly, cplx base) {
    if (poly.size() < 2) throw InputError("winding number needs a closed polyline");
    const std::size_t n = poly.size();
    const bool explicit_close = poly.front() == poly.back();
    double total = 0.0;
    auto step = [&](cplx a, cplx b) {
        if (seg_dist(base, a, b) <= 1e-12) throw InputError("winding number base lies on the curve");
        total += std::arg((b - base) / (a - base));
    };
    for (std::size_t i = 0; i + 1 < n; ++i) step(poly[i], poly[i + 1]);
    if (!explicit_close) step(poly.back(), poly.front());
    const double w = total / (2.0 * std::numbers::pi);
    const double r = std::round(w);
    if (std::abs(w - r) > 1e-6) throw InputError("winding number residual too large");
    return static_cast<int>(r);
}

bool is_simple(const std::vector<cplx>& p, bool closed) {
    const std::size_t n = p.size();
    if (n < 4) return true;
    const std::size_t segs = n - 1;  // closed polylines repeat the first point
    // bucket segments on a coarse grid to skip far pairs
    double x0 = p[0].real(), x1 = x0, y0 = p[0].imag(), y1 = y0;
    for (const auto& z : p) {
        x0 = std::min(x0, z.real());
        x1 = std::max(x1, z.real());
        y0 = std::min(y0, z.imag());
        y1 = std::max(y1, z.imag());
    }
    const int nb = std::max(1, static_cast<int>(std::sqrt(static_cast<double>(segs)) / 2));
    const double bw = std::max((x1 - x0) / nb, 1e-300), bh = std::max((y1 - y0) / nb, 1e-300);
    std::vector<std::vector<std::size_t>> buckets(static_cast<std::size_t>(nb) * nb);
    auto cell = [&](double v, double lo, double w) { return std::clamp(static_cast<int>((v - lo) / w), 0, nb - 1); };
    for (std::size_t s = 0; s < segs; ++s) {
        const int i0 = cell(std::min(p[s].real(), p[s + 1].real()), x0, bw), i1 = cell(std::max(p[s].real(), p[s + 1].real()), x0, bw);
        const int j0 = cell(std::min(p[s].imag(), p[s + 1].imag()), y0, bh), j1 = cell(std::max(p[s].imag(), p[s + 1].imag()), y0, bh);
        for (int j = j0; j <= j1; ++j)
            for (int i = i0; i <= i1; ++i) buckets[static_cast<std::size_t>(j) * nb + i].push_back(s);
    }
    for (const auto& b : buckets)
        for (std::size_t a = 0; a < b.size(); ++a)
            for (std::size_t c = a + 1; c < b.size(); ++c) {
                const std::size_t s = std::min(b[a], b[c]), t = std::max(b[a], b[c]);
                if (t == s + 1) continue;
                if (closed && s == 0 && t == segs - 1) continue;
                if (segments_touch(p[s], p[s + 1], p[t], p[t + 1])) return false;
            }
    return true;
}

namespace {

// Both arms leaving the point nearest 0 head outward and nearly parallel.
bool origin_hairpin(const std::vector<cplx>& pts, double cell) {
    const std::size_t n = pts.size() - 1;  // closed: last == first
    std::size_t im = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (std::abs(pts[i]) < std::abs(pts[im])) im = i;
    const cplx p = pts[im];
    if (std::abs(p) == 0.0) return true;
    const double arm = 4.0 * cell;
    auto walk = [&](std::size_t step) {
        double acc = 0.0;
        std::size_t i = im;
        for (std::size_t guard = 0; acc < arm && guard < n; ++guard) {
            const std::size_t j = (i + step) % n;
            acc += std::abs(pts[j] - pts[i]);
            i = j;
        }
        return pts[i];
    };
    const cplx a = walk(1) - p, b = walk(n - 1) - p;
    if (std::abs(a) == 0.0 || std::abs(b) == 0.0) return false;
    const cplx u1 = a / std::abs(a), u2 = b / std::abs(b);
    const double parallel = (u1 * std::conj(u2)).real();
    const double outward = ((u1 + u2) * std::conj(p)).real() / std::abs(p);
    return parallel > 0.8 && outward > 1.6;
}

}  // namespace

void finalize(ContourSet& cs) {
    const double margin = cs.cell;
    for (auto& c : cs.components) {
        c.closed = c.points.size() >= 4 && c.points.front() == c.points.back();
        c.length = arc_length(c.points);
        c.simple = is_simple(c.points, c.closed);
        bool near = false;
        for (const auto& z : c.points) {
            if (std::abs(z) <= cs.mask_radius + margin) near = true;
            if (z.real() - cs.box.x0 <= margin || cs.box.x1 - z.real() <= margin || z.imag() - cs.box.y0 <= margin ||
                cs.box.y1 - z.imag() <= margin)
                near = true;
        }
        c.unresolved = c.closed && c.length < 8.0 * cs.cell;
        c.origin_hairpin = c.closed && !c.unresolved && cs.mask_radius > 0.0 && origin_hairpin(c.points, cs.cell);
        c.reliable = c.closed && !near && !c.unresolved && !c.origin_hairpin;
        c.winding.reset();
        if (c.closed) {
            try {
                c.winding = winding_number(c.points, cplx(0.0, 0.0));
            } catch (const InputError&) {
                c.reliable = false;
            }
        }
    }
    std::sort(cs.components.begin(), cs.components.end(), [](const Component& a, const Component& b) {
        if (a.length != b.length) return a.length > b.length;
        const cplx pa = a.points.empty() ? cplx() : a.points.front(), pb = b.points.empty() ? cplx() : b.points.front();
        if (pa.real() != pb.real()) return pa.real() < pb.real();
        return pa.imag() < pb.imag();
    });
}

ContourSet trace_contours(const ScalarField& f, const std::function<double(cplx)>& center, double mask_radius) {
    ContourSet cs;
    cs.box = {f.xs.front(), f.xs.back(), f.ys.front(), f.ys.back()};
    cs.cell = std::max(f.xs.size() > 1 ? f.xs[1] - f.xs[0] : 0.0, f.ys.size() > 1 ? f.ys[1] - f.ys[0] : 0.0);
    cs.mask_radius = mask_radius;
    for (auto& ch : march(f, center, false)) {
        Component c;
        c.points = std::move(ch.points);
        c.start = ch.start;
        c.finish = ch.finish;
        cs.components.push_back(std::move(c));
    }
    finalize(cs);
    return cs;
}

OvalCensus oval_census(const ContourSet& cs) {
    OvalCensus o;
    for (const auto& c : cs.components) {
        if (c.closed && c.simple && c.reliable && c.winding) {
            if (*c.winding != 0) ++o.enclosing;
            else ++o.non_enclosing;
        } else {
            ++o.open_or_unreliable;
        }
    }
    return o;
}

}  // namespace bbt
