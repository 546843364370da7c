#include "bbtspec/implicit.hpp"

#include <cmath>

#include "bbtspec/determinant.hpp"
#include "bbtspec/errors.hpp"
#include "bbtspec/gamma.hpp"

namespace bbt {

namespace {

using P2 = Poly2<Rational>;

Integer binom(int n, int k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// Re and Im of (x + iy)^n
std::pair<P2, P2> power_parts(int n) {
    P2 re, im;
    for (int j = 0; j <= n; ++j) {
        Rational c(binom(n, j));
        // i^j
        switch (j % 4) {
            case 0: re.add_term(n - j, j, c); break;
            case 1: im.add_term(n - j, j, c); break;
            case 2: re.add_term(n - j, j, Rational(-c)); break;
            case 3: im.add_term(n - j, j, Rational(-c)); break;
        }
    }
    return {re, im};
}

Integer content(const P2& p) {
    Integer g = 0;
    for (const auto& [k, v] : p.coeffs()) {
        Integer n = v.get_num();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
    }
    return g;
}

Integer denominators_lcm(const P2& p) {
    Integer l = 1;
    for (const auto& [k, v] : p.coeffs()) {
        Integer d = v.get_den();
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
    }
    return l;
}

P2 scaled(const P2& p, const Rational& s) {
    return p.map<Rational>([&](const Rational& v) { return Rational(v * s); });
}

}  // namespace

double ImplicitCurve::eval(double x, double y) const {
    double acc = 0.0;
    for (const auto& [k, v] : g.coeffs()) acc += v.get_d() * std::pow(x, k.first) * std::pow(y, k.second);
    return acc;
}

std::pair<double, double> ImplicitCurve::gradient(double x, double y) const {
    double gx = 0.0, gy = 0.0;
    for (const auto& [k, v] : g.coeffs()) {
        const double c = v.get_d();
        if (k.first > 0) gx += c * k.first * std::pow(x, k.first - 1) * std::pow(y, k.second);
        if (k.second > 0) gy += c * k.second * std::pow(x, k.first) * std::pow(y, k.second - 1);
    }
    return {gx, gy};
}

double ImplicitCurve::scale_at(double x, double y) const {
    double acc = 0.0;
    for (const auto& [k, v] : g.coeffs())
        acc += std::abs(v.get_d()) * std::pow(std::abs(x), k.first) * std::pow(std::abs(y), k.second);
    return acc;
}

std::pair<std::vector<P2>, std::vector<P2>> real_imag_split(const CharFunction& f) {
    if (!f.exact) throw InputError("implicit curve needs an exact symbol");
    std::vector<P2> u(f.k + 1), v(f.k + 1);
    for (const auto& [key, c] : f.exact->coeffs()) {
        const int zpow = key.first + f.p;  // z^p f is a polynomial
        const auto [re, im] = power_parts(zpow);
        u[key.second] += scaled(re, c);
        v[key.second] += scaled(im, c);
    }
    return {u, v};
}

P2 sylvester_resultant(const std::vector<P2>& u_in, const std::vector<P2>& v_in) {
    auto trim = [](std::vector<P2> a) {
        while (!a.empty() && a.back().is_zero()) a.pop_back();
        return a;
    };
    const auto u = trim(u_in), v = trim(v_in);
    if (u.empty() || v.empty()) return P2();
    const int m = static_cast<int>(u.size()) - 1, n = static_cast<int>(v.size()) - 1;
    if (m == 0 || n == 0) {
        // Res(c, w) = c^deg w
        P2 out = P2::constant(Rational(1));
        for (int i = 0; i < (m == 0 ? n : m); ++i) out = out * (m == 0 ? u[0] : v[0]);
        return out;
    }
    const int N = m + n;
    std::vector<P2> mat(static_cast<std::size_t>(N) * N);
    // n shifted rows of u, m shifted rows of v, highest power first
    for (int r = 0; r < n; ++r)
        for (int i = 0; i <= m; ++i) mat[static_cast<std::size_t>(r) * N + r + (m - i)] = u[i];
    for (int r = 0; r < m; ++r)
        for (int i = 0; i <= n; ++i) mat[static_cast<std::size_t>(n + r) * N + r + (n - i)] = v[i];
    return subset_determinant<P2>(mat, N, P2(), P2::constant(Rational(1)));
}

bool divide_monic_x(const P2& num, const P2& den, P2& quotient) {
    const int d = den.max_first();
    if (den.coeff(d, 0) != 1 || den.slice_first(d).coeffs().size() != 1) throw std::invalid_argument("divisor not monic in x");
    P2 rem = num;
    quotient = P2();
    while (!rem.is_zero() && rem.max_first() >= d) {
        // highest x power, any y power
        const int a = rem.max_first();
        const auto slice = rem.slice_first(a);
        for (const auto& [b, c] : slice.coeffs()) {
            const P2 t = P2::monomial(a - d, b, c);
            quotient += t;
            rem -= t * den;
        }
    }
    return rem.is_zero();
}

ImplicitCurve gamma_implicit(const CharFunction& f) {
    if (!f.exact) throw InputError("implicit curve needs an exact symbol");
    if (f.k > 4 || f.p + f.q > 8) throw InputError("implicit curve guard: needs k <= 4 and p + q <= 8");
    const auto [u, v] = real_imag_split(f);
    ImplicitCurve out;
    out.resultant = sylvester_resultant(u, v);
    if (out.resultant.is_zero()) throw DegenerateError("resultant vanishes identically");

    P2 g = out.resultant;
    // y^m
    const int m = g.min_second();
    if (m > 0) {
        typename P2::Coeffs c;
        for (const auto& [key, val] : g.coeffs()) c.emplace(P2::Key{key.first, key.second - m}, val);
        g = P2(std::move(c));
    }
    out.y_power = m;
    const P2 r2 = P2::monomial(2, 0, Rational(1)) + P2::monomial(0, 2, Rational(1));
    P2 q;
    while (g.max_first() >= 2 && divide_monic_x(g, r2, q)) {
        g = q;
        ++out.r2_power;
    }
    g = scaled(g, Rational(denominators_lcm(g)));
    Rational c(content(g));
    if (std::prev(g.coeffs().end())->second < 0) c = -c;
    out.g = scaled(g, Rational(1) / c);
    return out;
}

ScalarField implicit_field(const ImplicitCurve& c, const Box& box, int res) {
    const Grid grid = Grid::cells(box, res);
    ScalarField sf;
    for (int i = 0; i < grid.nx; ++i) sf.xs.push_back(grid.x(i));
    for (int j = 0; j < grid.ny; ++j) sf.ys.push_back(grid.y(j));
    std::vector<cplx> pts;
    for (double y : sf.ys)
        for (double x : sf.xs) pts.emplace_back(x, y);
    sf.values = point_map(pts, [&](cplx z) { return c.eval(z.real(), z.imag()); });
    sf.mask.assign(sf.values.size(), 0);
    return sf;
}

ContourSet trace_implicit(const ImplicitCurve& c, const CharFunction& f, const Box& box, int res, double tol,
                          FilterStats* stats) {
    const Grid grid = Grid::cells(box, res);
    const double mr = 2.0 * std::max(grid.dx(), grid.dy());
    ScalarField sf = implicit_field(c, box, res);
    for (std::size_t i = 0; i < sf.values.size(); ++i) {
        const int ix = static_cast<int>(i % sf.xs.size()), iy = static_cast<int>(i / sf.xs.size());
        if (std::hypot(sf.xs[ix], sf.ys[iy]) <= mr) sf.mask[i] = 1;
    }
    const auto chains = march(sf, [&](cplx z) { return c.eval(z.real(), z.imag()); });

    auto snap = [&](cplx z) {
        for (int it = 0; it < 20; ++it) {
            const double val = c.eval(z.real(), z.imag());
            const auto [gx, gy] = c.gradient(z.real(), z.imag());
            const double n2 = gx * gx + gy * gy;
            if (n2 == 0.0) break;
            const cplx step(val * gx / n2, val * gy / n2);
            z -= step;
            if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        return z;
    };
    auto keep = [&](cplx z) {
        if (z == cplx(0.0, 0.0)) return false;
        try {
            return gamma_member(f, snap(z), tol);
        } catch (const DegenerateError&) {
            return false;
        }
    };

    FilterStats st;
    ContourSet cs;
    cs.box = box;
    cs.cell = std::max(grid.dx(), grid.dy());
    cs.mask_radius = mr;
    for (const auto& ch : chains) {
        std::vector<char> ok(ch.points.size());
        bool all = true;
        for (std::size_t i = 0; i < ch.points.size(); ++i) {
            ok[i] = keep(ch.points[i]);
            ++st.checked;
            if (!ok[i]) {
                ++st.rejected;
                all = false;
            }
        }
        if (all) {
            Component k;
            k.points = ch.points;
            k.start = ch.start;
            k.finish = ch.finish;
            cs.components.push_back(std::move(k));
            continue;
        }
        std::vector<cplx> run;
        auto flush = [&] {
            if (run.size() >= 2) {
                Component k;
                k.points = run;
                k.start = k.finish = EndKind::Boundary;
                cs.components.push_back(std::move(k));
            }
            run.clear();
        };
        for (std::size_t i = 0; i < ch.points.size(); ++i) {
            if (ok[i]) run.push_back(ch.points[i]);
            else flush();
        }
        flush();
    }
    finalize(cs);
    if (stats) *stats = st;
    return cs;
}

}  // namespace bbt
