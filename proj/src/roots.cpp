#include "bbtspec/roots.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "bbtspec/errors.hpp"

namespace bbt {

namespace {

constexpr double kEps = 2.220446049250313e-16;
constexpr int kMaxAberthIter = 300;

struct Eval {
    cplx p;
    cplx dp;
};

// P and P' by Horner; for |z| > 1 the reversed polynomial is used so the
// Newton ratio stays finite for huge roots.
cplx newton_ratio(const std::vector<cplx>& c, cplx z) {
    const int n = static_cast<int>(c.size()) - 1;
    if (std::abs(z) <= 1.0) {
        cplx p = c[static_cast<std::size_t>(n)], dp{0.0, 0.0};
        for (int i = n - 1; i >= 0; --i) {
            dp = dp * z + p;
            p = p * z + c[static_cast<std::size_t>(i)];
        }
        if (dp == cplx(0.0, 0.0)) return p == cplx(0.0, 0.0) ? cplx(0.0, 0.0) : cplx(1e-3 * (1.0 + std::abs(z)), 0.0);
        return p / dp;
    }
    const cplx y = 1.0 / z;
    cplx r = c[0], dr{0.0, 0.0};
    for (int i = 1; i <= n; ++i) {
        dr = dr * y + r;
        r = r * y + c[static_cast<std::size_t>(i)];
    }
    if (r == cplx(0.0, 0.0)) return {0.0, 0.0};
    const cplx denom = static_cast<double>(n) - y * dr / r;
    if (denom == cplx(0.0, 0.0)) return cplx(1e-3 * std::abs(z), 0.0);
    return z / denom;
}

cplx horner(const std::vector<cplx>& c, cplx z) {
    cplx p{0.0, 0.0};
    for (std::size_t i = c.size(); i-- > 0;) p = p * z + c[i];
    return p;
}

double abs_horner(const std::vector<cplx>& c, double r) {
    double s = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) s = s * r + std::abs(c[i]);
    return s;
}

// Initial circles from the upper convex hull of (i, log|c_i|) (Bini).
std::vector<cplx> starting_points(const std::vector<cplx>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<int> idx;
    std::vector<double> lg(static_cast<std::size_t>(n + 1));
    for (int i = 0; i <= n; ++i) {
        const double a = std::abs(c[static_cast<std::size_t>(i)]);
        lg[static_cast<std::size_t>(i)] = a > 0.0 ? std::log(a) : -1e300;
    }
    for (int i = 0; i <= n; ++i) {
        if (lg[static_cast<std::size_t>(i)] <= -1e299) continue;
        while (idx.size() >= 2) {
            const int a = idx[idx.size() - 2], b = idx.back();
            const double cr = (b - a) * (lg[static_cast<std::size_t>(i)] - lg[static_cast<std::size_t>(a)]) -
                              (i - a) * (lg[static_cast<std::size_t>(b)] - lg[static_cast<std::size_t>(a)]);
            if (cr >= 0.0) idx.pop_back();
            else break;
        }
        idx.push_back(i);
    }
    std::vector<cplx> z;
    z.reserve(static_cast<std::size_t>(n));
    constexpr double sigma = 0.7;
    const double two_pi = 2.0 * std::numbers::pi;
    for (std::size_t e = 0; e + 1 < idx.size(); ++e) {
        const int a = idx[e], b = idx[e + 1];
        const int cnt = b - a;
        const double u = std::exp((lg[static_cast<std::size_t>(a)] - lg[static_cast<std::size_t>(b)]) / cnt);
        for (int j = 0; j < cnt; ++j) {
            double ang = two_pi * j / cnt + two_pi * a / n + sigma + 0.5 * static_cast<double>(e);
            // equal radii on neighbouring hull edges can repeat an angle; identical
            // iterates never separate under Aberth
            auto clash = [&](double t) {
                const cplx w(u * std::cos(t), u * std::sin(t));
                return std::any_of(z.begin(), z.end(), [&](const cplx& v) { return std::abs(v - w) <= 1e-3 * u; });
            };
            for (int tries = 0; tries < 16 && clash(ang); ++tries) ang += 0.29;
            z.emplace_back(u * std::cos(ang), u * std::sin(ang));
        }
    }
    return z;
}

void aberth(const std::vector<cplx>& c, std::vector<cplx>& z) {
    const std::size_t n = z.size();
    std::vector<bool> done(n, false);
    for (int it = 0; it < kMaxAberthIter; ++it) {
        bool all = true;
        for (std::size_t j = 0; j < n; ++j) {
            if (done[j]) continue;
            const cplx w = newton_ratio(c, z[j]);
            cplx s{0.0, 0.0};
            for (std::size_t l = 0; l < n; ++l) {
                if (l == j) continue;
                const cplx d = z[j] - z[l];
                if (d != cplx(0.0, 0.0)) s += 1.0 / d;
            }
            const cplx denom = 1.0 - w * s;
            const cplx step = denom == cplx(0.0, 0.0) ? w : w / denom;
            z[j] -= step;
            if (std::abs(step) <= 4.0 * kEps * std::abs(z[j]) || std::abs(step) == 0.0) done[j] = true;
            else all = false;
        }
        if (all) break;
    }
}

void polish(const std::vector<cplx>& c, cplx& z) {
    double res = std::abs(horner(c, z));
    for (int it = 0; it < 8 && res > 0.0; ++it) {
        const cplx cand = z - newton_ratio(c, z);
        const double r2 = std::abs(horner(c, cand));
        if (!(r2 < res)) break;
        z = cand;
        res = r2;
    }
}

double arg_0_2pi(cplx z) {
    double a = std::arg(z);
    if (a < 0.0) a += 2.0 * std::numbers::pi;
    if (a >= 2.0 * std::numbers::pi) a = 0.0;
    return a;
}

}  // namespace

void sort_roots(std::vector<cplx>& zs) {
    std::sort(zs.begin(), zs.end(), [](const cplx& a, const cplx& b) { return std::abs(a) < std::abs(b); });
    // order runs of tied moduli by argument
    std::size_t i = 0;
    while (i < zs.size()) {
        std::size_t j = i + 1;
        while (j < zs.size() && std::abs(zs[j]) - std::abs(zs[j - 1]) <= 1e-12 * std::max(1e-300, std::abs(zs[j]))) ++j;
        std::sort(zs.begin() + static_cast<long>(i), zs.begin() + static_cast<long>(j),
                  [](const cplx& a, const cplx& b) { return arg_0_2pi(a) < arg_0_2pi(b); });
        i = j;
    }
}

RootList roots(std::span<const cplx> coeffs, double trim_tol) {
    RootList out;
    double cmax = 0.0;
    for (const auto& c : coeffs) cmax = std::max(cmax, std::abs(c));
    if (coeffs.empty() || cmax == 0.0) throw DegenerateError("roots of the zero polynomial");
    const double cut = trim_tol * cmax;

    std::size_t hi = coeffs.size();
    while (hi > 0 && std::abs(coeffs[hi - 1]) <= cut) --hi;
    std::size_t lo = 0;
    while (lo < hi && std::abs(coeffs[lo]) <= cut) ++lo;
    out.at_infinity = static_cast<int>(coeffs.size() - hi);
    out.at_origin = static_cast<int>(lo);
    if (hi - 1 == 0) throw DegenerateError("roots of a degree-0 polynomial");

    std::vector<cplx> c(coeffs.begin() + static_cast<long>(lo), coeffs.begin() + static_cast<long>(hi));
    const int n = static_cast<int>(c.size()) - 1;
    std::vector<cplx> z;
    if (n == 1) {
        z.push_back(-c[0] / c[1]);
    } else if (n == 2) {
        const cplx disc = std::sqrt(c[1] * c[1] - 4.0 * c[2] * c[0]);
        // pick the sign that avoids cancellation
        const cplx qv = std::real(std::conj(c[1]) * disc) >= 0.0 ? -0.5 * (c[1] + disc) : -0.5 * (c[1] - disc);
        if (qv == cplx(0.0, 0.0)) {
            z = {cplx(0.0, 0.0), cplx(0.0, 0.0)};
        } else {
            z = {qv / c[2], c[0] / qv};
        }
        for (auto& r : z) polish(c, r);
    } else if (n > 0) {
        z = starting_points(c);
        aberth(c, z);
        for (auto& r : z) polish(c, r);
    }
    for (int i = 0; i < out.at_origin; ++i) z.emplace_back(0.0, 0.0);
    sort_roots(z);

    std::vector<cplx> full(coeffs.begin(), coeffs.begin() + static_cast<long>(hi));
    out.roots = std::move(z);
    out.residuals.reserve(out.roots.size());
    out.backward_errors.reserve(out.roots.size());
    for (const auto& r : out.roots) {
        const double res = std::abs(horner(full, r));
        const double scale = abs_horner(full, std::abs(r));
        const double be = scale > 0.0 ? res / scale : 0.0;
        out.residuals.push_back(res);
        out.backward_errors.push_back(be);
        if (!(be <= 1e-9)) out.low_confidence = true;
    }
    for (std::size_t a = 0; a < out.roots.size() && !out.clustered; ++a)
        for (std::size_t b = a + 1; b < out.roots.size(); ++b)
            if (std::abs(out.roots[a] - out.roots[b]) < 1e-7 * std::max(1.0, std::abs(out.roots[a]))) {
                out.clustered = true;
                break;
            }
    return out;
}

RootList sorted_roots_z(const CharFunction& f, cplx lambda) {
    const auto c = f.z_coeffs(lambda);
    return roots(c);
}

RootList branches_lambda(const CharFunction& f, cplx z) {
    if (z == cplx(0.0, 0.0)) throw DegenerateError("branches_lambda at z = 0");
    // g_k = (-1)^k never vanishes; relative trimming would drop huge branches near 0
    const auto c = f.lambda_coeffs(z);
    return roots(c, 0.0);
}

}  // namespace bbt
