#include "bbtspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bbtspec/errors.hpp"
#include "bbtspec/hqr.hpp"
#include "bbtspec/linalg.hpp"
#include "bbtspec/roots.hpp"

namespace bbt {

namespace {

bool by_re_im(const cplx& a, const cplx& b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

// golden-section minimum of h on [a, b]
double golden_min(const std::function<double(double)>& h, double a, double b, int iters = 60) {
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = h(c), fd = h(d);
    for (int i = 0; i < iters && std::abs(b - a) > 1e-14 * (1.0 + std::abs(a)); ++i) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = h(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = h(d);
        }
    }
    return fc < fd ? c : d;
}

double safe_gap(const CharFunction& f, cplx lambda) {
    try {
        return lambda0_gap(f, lambda);
    } catch (const DegenerateError&) {
        return std::nan("");
    }
}

}  // namespace

Truncation truncation(const MatrixSymbol& sym, int n) {
    if (n < 1) throw InputError("truncation size must be >= 1");
    Truncation t;
    t.n = n;
    t.k = sym.k();
    const int k = t.k, N = n * k;
    t.a.assign(static_cast<std::size_t>(N) * N, 0.0);
    for (const auto& [m, blk] : sym.blocks()) {
        for (int bi = 0; bi < n; ++bi) {
            const int bj = bi - m;
            if (bj < 0 || bj >= n) continue;
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j)
                    t.a[static_cast<std::size_t>(bi * k + i) * N + (bj * k + j)] =
                        blk[static_cast<std::size_t>(i * k + j)].to_double();
        }
    }
    return t;
}

std::vector<cplx> eigenvalues(const Truncation& t, const EigOptions& opt) {
    const int N = t.dim();
    std::vector<double> a = t.a;
    if (opt.radius != 1.0) {
        if (!(opt.radius > 0.0) || !std::isfinite(opt.radius)) throw InputError("similarity radius must be positive");
        const double ls = std::log(opt.radius) / t.k;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                auto& v = a[static_cast<std::size_t>(i) * N + j];
                if (v != 0.0) v *= std::exp(ls * (i - j));
            }
    }
    std::vector<cplx> ev = opt.precision == Precision::Double ? hqr::eigenvalues<double>(a, N, opt.balance)
                                                              : hqr::eigenvalues<long double>(a, N, opt.balance);
    std::sort(ev.begin(), ev.end(), by_re_im);
    return ev;
}

double max_abs_imag(const std::vector<cplx>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z.imag()));
    return m;
}

double lambda0_gap(const CharFunction& f, cplx lambda) {
    const RootList r = sorted_roots_z(f, lambda);
    if (r.at_infinity > 0) throw DegenerateError("f_q(lambda) vanishes");
    if (r.at_origin > 0) throw DegenerateError("f_{-p}(lambda) vanishes");
    const int p = f.split();
    const double lo = std::abs(r[static_cast<std::size_t>(p - 1)]);
    const double hi = std::abs(r[static_cast<std::size_t>(p)]);
    return hi / lo - 1.0;
}

Lambda0Sample sample_lambda0(const CharFunction& f, const Box& box, int res, const Lambda0Options& opt) {
    if (!box.valid()) throw InputError("empty box");
    if (res < 16) throw InputError("resolution must be >= 16");
    if (!(opt.tau > 0.0)) throw InputError("threshold must be positive");
    Lambda0Sample s;
    s.grid = Grid::cells(box, res);
    s.threshold = opt.tau;
    s.refine_threshold = opt.refine_below > 0.0 ? opt.refine_below : 10.0 * opt.tau;
    const Grid& g = s.grid;
    const auto gap = grid_map(g, [&](cplx l) { return safe_gap(f, l); }, opt.exec);

    std::vector<Lambda0Point> pts;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double v = gap[g.index(i, j)];
            if (std::isnan(v)) ++s.skipped;
            else if (v <= opt.tau) pts.push_back({g.at(i, j), v});
        }

    // edge refinement: discrete minima along rows (x direction) and columns
    struct Seg {
        cplx a, b;
    };
    std::vector<Seg> segs;
    auto consider = [&](double vm, double v0, double vp, cplx a, cplx b) {
        if (std::isnan(vm) || std::isnan(v0) || std::isnan(vp)) return;
        if (v0 < vm && v0 <= vp && v0 < s.refine_threshold) segs.push_back({a, b});
    };
    for (int j = 0; j < g.ny; ++j)
        for (int i = 1; i + 1 < g.nx; ++i)
            consider(gap[g.index(i - 1, j)], gap[g.index(i, j)], gap[g.index(i + 1, j)], g.at(i - 1, j), g.at(i + 1, j));
    for (int i = 0; i < g.nx; ++i)
        for (int j = 1; j + 1 < g.ny; ++j)
            consider(gap[g.index(i, j - 1)], gap[g.index(i, j)], gap[g.index(i, j + 1)], g.at(i, j - 1), g.at(i, j + 1));

    std::vector<Lambda0Point> refined(segs.size(), Lambda0Point{cplx(0.0, 0.0), std::nan("")});
    const long ns = static_cast<long>(segs.size());
    auto refine = [&](long idx) {
        const auto& sg = segs[static_cast<std::size_t>(idx)];
        auto h = [&](double t) {
            const double v = safe_gap(f, sg.a + t * (sg.b - sg.a));
            return std::isnan(v) ? 1e300 : v;
        };
        const double t = golden_min(h, 0.0, 1.0);
        const cplx l = sg.a + t * (sg.b - sg.a);
        refined[static_cast<std::size_t>(idx)] = {l, h(t)};
    };
    if (opt.exec == Exec::Serial) {
        for (long i = 0; i < ns; ++i) refine(i);
    } else {
#pragma omp parallel for schedule(dynamic, 16) num_threads(thread_count())
        for (long i = 0; i < ns; ++i) refine(i);
    }
    for (const auto& p : refined)
        if (p.gap <= opt.tau) {
            pts.push_back(p);
            ++s.refined;
        }
    std::sort(pts.begin(), pts.end(), [](const Lambda0Point& a, const Lambda0Point& b) {
        if (a.lambda != b.lambda) return by_re_im(a.lambda, b.lambda);
        return a.gap < b.gap;
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](const Lambda0Point& a, const Lambda0Point& b) { return a.lambda == b.lambda; }),
              pts.end());
    s.points = std::move(pts);
    return s;
}

RealityVerdict reality_verdict(const Lambda0Sample& s) {
    if (s.points.empty()) throw DegenerateError("empty Lambda_0 sample: grid too coarse or box misplaced");
    RealityVerdict v;
    v.tolerance = s.cell_diagonal();
    for (const auto& p : s.points) {
        const double im = std::abs(p.lambda.imag());
        v.max_abs_imag = std::max(v.max_abs_imag, im);
        if (im > v.tolerance) v.offenders.push_back(p.lambda);
    }
    std::stable_sort(v.offenders.begin(), v.offenders.end(), [](const cplx& a, const cplx& b) {
        if (std::abs(a.imag()) != std::abs(b.imag())) return std::abs(a.imag()) > std::abs(b.imag());
        return by_re_im(a, b);
    });
    v.real = v.offenders.empty();
    return v;
}

cplx c0_fixed(const MatrixSymbol& sym, cplx lambda, double radius, int nodes, double rotation) {
    const int k = sym.k(), r = sym.r(), K = r * k;
    std::vector<cplx> acc(static_cast<std::size_t>(K) * K, cplx(0.0, 0.0));
    const double two_pi = 2.0 * std::numbers::pi;
    for (int j = 0; j < nodes; ++j) {
        const cplx z = std::polar(radius, two_pi * j / nodes + rotation);
        auto m = sym.eval(z);
        for (int d = 0; d < k; ++d) m[static_cast<std::size_t>(d * k + d)] -= lambda;
        auto inv = inverse(m, k);
        if (!inv) throw DegenerateError("B(z) - lambda I singular at a quadrature node");
        for (int mu = 0; mu < r; ++mu)
            for (int nu = 0; nu < r; ++nu) {
                const cplx w = std::pow(z, mu - nu);
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b)
                        acc[static_cast<std::size_t>(mu * k + a) * K + (nu * k + b)] +=
                            w * (*inv)[static_cast<std::size_t>(a * k + b)];
            }
    }
    for (auto& v : acc) v /= static_cast<double>(nodes);
    return determinant(acc, K);
}

C0Result c0_detail(const MatrixSymbol& sym, const CharFunction& f, cplx lambda, const C0Config& cfg) {
    if (cfg.nodes < 64 || (cfg.nodes & (cfg.nodes - 1)) != 0) throw InputError("C0 node count must be a power of two >= 64");
    const RootList rl = sorted_roots_z(f, lambda);
    if (rl.at_infinity > 0 || rl.at_origin > 0) throw DegenerateError("degenerate lambda for C0");
    const int p = f.split();
    const double lo = std::abs(rl[static_cast<std::size_t>(p - 1)]);
    const double hi = std::abs(rl[static_cast<std::size_t>(p)]);
    if (hi / lo - 1.0 < 1e-6) throw DegenerateError("lambda too close to Lambda_0 for C0");
    C0Result res;
    res.radius = cfg.radius.value_or(std::sqrt(lo * hi));
    if (!(res.radius > lo && res.radius < hi)) throw InputError("C0 radius outside the admissible annulus");

    double rotation = 0.0;
    bool rotated = false;
    auto eval = [&](int n) {
        for (;;) {
            try {
                return c0_fixed(sym, lambda, res.radius, n, rotation);
            } catch (const DegenerateError&) {
                if (rotated) throw;
                rotated = true;
                rotation = std::numbers::pi / n;
            }
        }
    };
    int n = cfg.nodes;
    cplx prev = eval(n);
    for (;;) {
        const int n2 = 2 * n;
        if (n2 > cfg.max_nodes) throw ConvergenceError("C0 quadrature did not converge by the node cap");
        const cplx cur = eval(n2);
        if (std::abs(cur - prev) <= cfg.tol * std::max(1.0, std::abs(cur))) {
            res.value = cur;
            res.previous = prev;
            res.nodes = n2;
            return res;
        }
        prev = cur;
        n = n2;
    }
}

cplx c0(const MatrixSymbol& sym, const CharFunction& f, cplx lambda, const C0Config& cfg) {
    return c0_detail(sym, f, lambda, cfg).value;
}

G0Scan g0_scan(const MatrixSymbol& sym, const CharFunction& f, const Box& box, int res, Exec exec) {
    if (!box.valid()) throw InputError("empty box");
    const Grid g = Grid::cells(box, res);
    auto abs_c0 = [&](cplx l) {
        const double gp = safe_gap(f, l);
        if (std::isnan(gp) || gp <= 1e-3) return std::nan("");
        try {
            return std::abs(c0(sym, f, l));
        } catch (const std::runtime_error&) {
            return std::nan("");
        }
    };
    const auto v = grid_map(g, abs_c0, exec);
    G0Scan out;
    for (double x : v) (std::isnan(x) ? out.skipped : out.evaluated) += 1;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const double c = v[g.index(i, j)];
            if (std::isnan(c)) continue;
            bool strict = true;
            for (int dj = -1; dj <= 1 && strict; ++dj)
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0) continue;
                    const int a = i + di, b = j + dj;
                    if (a < 0 || b < 0 || a >= g.nx || b >= g.ny) continue;
                    const double w = v[g.index(a, b)];
                    if (!std::isnan(w) && w <= c) {
                        strict = false;
                        break;
                    }
                }
            if (!strict) continue;
            // coordinate descent with shrinking steps
            cplx l = g.at(i, j);
            double best = c, hx = g.dx(), hy = g.dy();
            for (int it = 0; it < 200 && (hx > 1e-12 || hy > 1e-12); ++it) {
                bool moved = false;
                for (cplx d : {cplx(hx, 0), cplx(-hx, 0), cplx(0, hy), cplx(0, -hy)}) {
                    if (!box.contains(l + d)) continue;
                    const double t = abs_c0(l + d);
                    if (!std::isnan(t) && t < best) {
                        best = t;
                        l += d;
                        moved = true;
                        break;
                    }
                }
                if (!moved) {
                    hx *= 0.5;
                    hy *= 0.5;
                }
            }
            // |c0| decays like |lambda|^{-k}; minima pinned to the box edge are not zeros
            const double ex = 0.5 * g.dx(), ey = 0.5 * g.dy();
            if (l.real() < box.x0 + ex || l.real() > box.x1 - ex || l.imag() < box.y0 + ey || l.imag() > box.y1 - ey)
                continue;
            if (!(best < 1e-4)) continue;
            double dbl = std::nan("");
            try {
                const auto d1 = c0_detail(sym, f, l);
                dbl = std::abs(c0_fixed(sym, l, d1.radius, 2 * d1.nodes));
            } catch (const std::runtime_error&) {
            }
            out.candidates.push_back({l, best, dbl});
        }
    std::sort(out.candidates.begin(), out.candidates.end(),
              [](const G0Candidate& a, const G0Candidate& b) { return by_re_im(a.lambda, b.lambda); });
    return out;
}

double nj_gap(const CharFunction& f, cplx z, int j) {
    if (j < 1 || j > f.k) throw InputError("branch index outside 1..k");
    const RootList b = branches_lambda(f, z);
    return lambda0_gap(f, b[static_cast<std::size_t>(j - 1)]);
}

}  // namespace bbt
