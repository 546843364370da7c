#include "bbtspec/gamma.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bbtspec/errors.hpp"
#include "bbtspec/roots.hpp"

namespace bbt {

bool gamma_member(const CharFunction& f, cplx z, double tol) {
    const RootList b = branches_lambda(f, z);
    double m = 1e300;
    for (const auto& l : b.roots) m = std::min(m, std::abs(l.imag()));
    return m <= tol;
}

double gamma_sign(const CharFunction& f, cplx z) {
    if (z == cplx(0.0, 0.0)) return std::nan("");
    try {
        const RootList b = branches_lambda(f, z);
        double p = 1.0;
        for (const auto& l : b.roots) p *= l.imag();
        return p;
    } catch (const DegenerateError&) {
        return std::nan("");
    }
}

namespace {

ScalarField field_on(const CharFunction& f, std::vector<double> xs, std::vector<double> ys, double mask_radius, Exec exec) {
    ScalarField sf;
    sf.xs = std::move(xs);
    sf.ys = std::move(ys);
    std::vector<cplx> pts;
    pts.reserve(sf.xs.size() * sf.ys.size());
    for (double y : sf.ys)
        for (double x : sf.xs) pts.emplace_back(x, y);
    sf.values = point_map(pts, [&](cplx z) { return std::abs(z) <= mask_radius ? std::nan("") : gamma_sign(f, z); }, exec);
    sf.mask.resize(sf.values.size());
    for (std::size_t i = 0; i < sf.values.size(); ++i) sf.mask[i] = std::isfinite(sf.values[i]) ? 0 : 1;
    return sf;
}

std::vector<cplx> mirrored(const std::vector<cplx>& p) {
    std::vector<cplx> out;
    out.reserve(p.size());
    for (const auto& z : p) out.push_back(std::conj(z));
    return out;
}

}  // namespace

ScalarField sign_field(const CharFunction& f, const Box& box, int res, Exec exec) {
    if (!box.valid()) throw InputError("empty box");
    const Grid g = Grid::cells(box, res);
    std::vector<double> xs, ys;
    for (int i = 0; i < g.nx; ++i) xs.push_back(g.x(i));
    for (int j = 0; j < g.ny; ++j) ys.push_back(g.y(j));
    return field_on(f, xs, ys, 2.0 * std::max(g.dx(), g.dy()), exec);
}

ContourSet trace_gamma(const CharFunction& f, const Box& box, int res, Exec exec) {
    if (!box.valid()) throw InputError("empty box");
    if (res < 64) throw InputError("tracing needs resolution >= 64");
    const bool symmetric = box.y0 < 0.0 && std::abs(box.y0 + box.y1) <= 1e-12 * box.height();
    if (!symmetric) {
        const Grid g = Grid::cells(box, res);
        const double mr = 2.0 * std::max(g.dx(), g.dy());
        auto sf = sign_field(f, box, res, exec);
        return trace_contours(sf, [&](cplx z) { return gamma_sign(f, z); }, mr);
    }
    const Grid g = Grid::cells(box, res);
    const int half_rows = (g.ny - 1) / 2;  // ny - 1 cells, even
    const double dy = g.dy();
    std::vector<double> xs, ys;
    for (int i = 0; i < g.nx; ++i) xs.push_back(g.x(i));
    for (int j = 0; j < half_rows; ++j) ys.push_back((j + 0.5) * dy);
    const double mr = 2.0 * std::max(g.dx(), dy);
    const ScalarField sf = field_on(f, xs, ys, mr, exec);
    const auto chains = march(sf, [&](cplx z) { return gamma_sign(f, z); }, true);

    ContourSet cs;
    cs.box = box;
    cs.cell = std::max(g.dx(), dy);
    cs.mask_radius = mr;
    auto push = [&](std::vector<cplx> pts, EndKind s, EndKind e) {
        Component c;
        c.points = std::move(pts);
        c.start = s;
        c.finish = e;
        cs.components.push_back(std::move(c));
    };
    for (const auto& ch : chains) {
        const auto& p = ch.points;
        if (ch.closed) {
            push(p, EndKind::None, EndKind::None);
            push(mirrored(p), EndKind::None, EndKind::None);
            continue;
        }
        const bool a = ch.start == EndKind::Axis, b = ch.finish == EndKind::Axis;
        if (a && b) {
            std::vector<cplx> loop;
            loop.push_back(cplx(p.front().real(), 0.0));
            loop.insert(loop.end(), p.begin(), p.end());
            loop.push_back(cplx(p.back().real(), 0.0));
            auto m = mirrored(p);
            loop.insert(loop.end(), m.rbegin(), m.rend());
            loop.push_back(loop.front());
            push(std::move(loop), EndKind::None, EndKind::None);
        } else if (a || b) {
            // join the arc and its mirror through the axis point
            std::vector<cplx> q = p;
            EndKind far = ch.finish;
            if (b) {
                std::reverse(q.begin(), q.end());
                far = ch.start;
            }
            // q starts on the axis
            auto m = mirrored(q);
            std::vector<cplx> joined(m.rbegin(), m.rend());
            joined.push_back(cplx(q.front().real(), 0.0));
            joined.insert(joined.end(), q.begin(), q.end());
            push(std::move(joined), far, far);
        } else {
            push(p, ch.start, ch.finish);
            push(mirrored(p), ch.start, ch.finish);
        }
    }
    finalize(cs);
    return cs;
}

RayResult ray_crossings(const CharFunction& f, cplx direction, double r_min, double r_max, int samples) {
    if (!(r_min > 0.0 && r_max > r_min)) throw InputError("ray needs 0 < r_min < r_max");
    if (samples < 256) throw InputError("ray needs at least 256 samples");
    const cplx d = direction / std::abs(direction);
    RayResult out;
    auto P = [&](double t) { return gamma_sign(f, t * d); };
    const double lr = std::log(r_min), span = std::log(r_max) - lr;
    double prev_t = 0.0, prev_v = std::nan("");
    for (int s = 0; s < samples; ++s) {
        const double t = std::exp(lr + span * s / (samples - 1));
        double v = P(t);
        if (!std::isfinite(v)) {
            // nudge once before giving up on the sample
            v = P(t * (1.0 + 1e-9));
            if (!std::isfinite(v)) {
                ++out.skipped;
                continue;
            }
        }
        if (std::isfinite(prev_v) && ((prev_v > 0.0) != (v > 0.0))) {
            double lo = prev_t, hi = t, vlo = prev_v;
            while (hi - lo > 1e-6 * hi) {
                const double mid = 0.5 * (lo + hi);
                const double vm = P(mid);
                if (!std::isfinite(vm)) break;
                if ((vm > 0.0) == (vlo > 0.0)) {
                    lo = mid;
                    vlo = vm;
                } else {
                    hi = mid;
                }
            }
            out.radii.push_back(0.5 * (lo + hi));
            ++out.crossings;
        }
        prev_t = t;
        prev_v = v;
    }
    return out;
}

int min_ray_crossings(const CharFunction& f, int rays, double r_min, double r_max, int samples) {
    int best = 1 << 30;
    for (int m = 0; m < rays; ++m) {
        const cplx dir = std::polar(1.0, 2.0 * std::numbers::pi * (m + 0.5) / rays);
        best = std::min(best, ray_crossings(f, dir, r_min, r_max, samples).crossings);
    }
    return best;
}

Box default_gamma_box(const CharFunction& f) {
    double far = 0.0;
    const int n = 4000;
    const double eps = 1e-7;
    for (int side : {-1, 1}) {
        double prev = std::nan("");
        for (int s = 0; s < n; ++s) {
            const double x = side * std::pow(10.0, -3.0 + 6.0 * s / (n - 1));
            const double v = gamma_sign(f, cplx(x, eps * std::max(1.0, std::abs(x))));
            if (std::isfinite(prev) && std::isfinite(v) && ((prev > 0.0) != (v > 0.0))) far = std::max(far, std::abs(x));
            prev = v;
        }
    }
    const double h = std::clamp(1.5 * far, 0.5, 10.0);
    return {-h, h, -h, h};
}

Box default_lambda0_box(const MatrixSymbol& sym, int n) {
    const auto ev = eigenvalues(truncation(sym, n));
    double x0 = 1e300, x1 = -1e300, ym = 0.0;
    for (const auto& e : ev) {
        x0 = std::min(x0, e.real());
        x1 = std::max(x1, e.real());
        ym = std::max(ym, std::abs(e.imag()));
    }
    const double pad = std::max(0.1 * (x1 - x0), 1.0);
    const double h = std::max(1.0, 1.5 * ym);
    return {x0 - pad, x1 + pad, -h, h};
}

OvalVerdict oval_verdict(const MatrixSymbol& sym, const VerdictConfig& cfg) {
    OvalVerdict v;
    const CharFunction f = char_function(sym);
    v.k = f.k;
    try {
        v.lambda0_box = cfg.lambda0_box.value_or(default_lambda0_box(sym));
        Lambda0Options o;
        o.tau = cfg.tau;
        o.exec = cfg.exec;
        const auto s = sample_lambda0(f, v.lambda0_box, cfg.lambda0_res, o);
        const auto r = reality_verdict(s);
        v.real = r.real;
        v.lambda0_max_imag = r.max_abs_imag;
        v.lambda0_tolerance = r.tolerance;
        v.lambda0_points = s.points.size();
    } catch (const std::runtime_error& e) {
        v.missing.push_back(std::string("lambda0: ") + e.what());
    }
    try {
        v.gamma_box = cfg.gamma_box.value_or(default_gamma_box(f));
        const auto cs = trace_gamma(f, v.gamma_box, cfg.gamma_res, cfg.exec);
        v.census = oval_census(cs);
    } catch (const std::runtime_error& e) {
        v.missing.push_back(std::string("gamma: ") + e.what());
    }
    v.min_crossings = min_ray_crossings(f, cfg.rays);
    v.ovals_match_k = v.census.enclosing == v.k;
    v.rays_reach_k = v.min_crossings >= v.k;
    v.agreement = v.missing.empty() && (v.real == v.ovals_match_k);
    return v;
}

}  // namespace bbt
