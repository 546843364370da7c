#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "bbtspec/errors.hpp"

namespace bbt {

/// Eigenvalues of a dense real matrix: Parlett-Reinsch balancing,
/// Householder reduction to upper Hessenberg form, Francis double-shift QR.
/// Templated on the working real type (double, long double, float128).
/// Matrices are row-major n x n and are overwritten.
namespace hqr {

/// Thrown when an eigenvalue fails to deflate within the iteration cap.
/// Carries the eigenvalues that did converge.
struct NoConvergence : ConvergenceError {
    std::vector<std::complex<double>> partial;
    NoConvergence(const std::string& what, std::vector<std::complex<double>> p)
        : ConvergenceError(what), partial(std::move(p)) {}
};

template <class R>
void balance(std::vector<R>& a, int n) {
    using std::abs;
    const R radix = 2, sqrdx = radix * radix;
    bool done = false;
    while (!done) {
        done = true;
        for (int i = 0; i < n; ++i) {
            R r = 0, c = 0;
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                c += abs(a[static_cast<std::size_t>(j) * n + i]);
                r += abs(a[static_cast<std::size_t>(i) * n + j]);
            }
            if (c == 0 || r == 0) continue;
            R g = r / radix, f = 1;
            const R s = c + r;
            while (c < g) {
                f *= radix;
                c *= sqrdx;
            }
            g = r * radix;
            while (c > g) {
                f /= radix;
                c /= sqrdx;
            }
            if ((c + r) / f < R(0.95) * s) {
                done = false;
                g = R(1) / f;
                for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(i) * n + j] *= g;
                for (int j = 0; j < n; ++j) a[static_cast<std::size_t>(j) * n + i] *= f;
            }
        }
    }
}

template <class R>
void hessenberg(std::vector<R>& a, int n) {
    using std::abs;
    using std::sqrt;
    auto at = [&](int i, int j) -> R& { return a[static_cast<std::size_t>(i) * n + j]; };
    std::vector<R> v(static_cast<std::size_t>(n));
    for (int k = 0; k + 2 < n; ++k) {
        R alpha = 0;
        for (int i = k + 1; i < n; ++i) alpha = std::max(alpha, abs(at(i, k)));
        if (alpha == 0) continue;
        R norm2 = 0;
        for (int i = k + 1; i < n; ++i) {
            v[static_cast<std::size_t>(i)] = at(i, k) / alpha;
            norm2 += v[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
        }
        R sigma = sqrt(norm2);
        if (v[static_cast<std::size_t>(k + 1)] < 0) sigma = -sigma;
        v[static_cast<std::size_t>(k + 1)] += sigma;
        const R beta = sigma * v[static_cast<std::size_t>(k + 1)];  // v^T v / 2
        if (beta == 0) continue;
        // A <- H A, H = I - v v^T / beta
        for (int j = k; j < n; ++j) {
            R s = 0;
            for (int i = k + 1; i < n; ++i) s += v[static_cast<std::size_t>(i)] * at(i, j);
            s /= beta;
            for (int i = k + 1; i < n; ++i) at(i, j) -= s * v[static_cast<std::size_t>(i)];
        }
        // A <- A H
        for (int i = 0; i < n; ++i) {
            R s = 0;
            for (int j = k + 1; j < n; ++j) s += at(i, j) * v[static_cast<std::size_t>(j)];
            s /= beta;
            for (int j = k + 1; j < n; ++j) at(i, j) -= s * v[static_cast<std::size_t>(j)];
        }
        for (int i = k + 2; i < n; ++i) at(i, k) = 0;
    }
}

/// Eigenvalues of an upper Hessenberg matrix (destroyed).
template <class R>
std::vector<std::complex<double>> hqr(std::vector<R>& a, int n, int max_its = 60) {
    using std::abs;
    using std::sqrt;
    auto at = [&](int i, int j) -> R& { return a[static_cast<std::size_t>(i) * n + j]; };
    auto sign = [](R x, R y) { return y >= 0 ? abs(x) : -abs(x); };
    const R eps = std::numeric_limits<R>::epsilon();
    std::vector<R> wr(static_cast<std::size_t>(n)), wi(static_cast<std::size_t>(n));
    R anorm = 0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(i - 1, 0); j < n; ++j) anorm += abs(at(i, j));

    int nn = n - 1;
    R t = 0;
    R p = 0, q = 0, r = 0, s = 0, w = 0, x = 0, y = 0, z = 0;
    auto collect = [&](int upto) {
        std::vector<std::complex<double>> out;
        for (int i = upto + 1; i < n; ++i)
            out.emplace_back(static_cast<double>(wr[static_cast<std::size_t>(i)]),
                             static_cast<double>(wi[static_cast<std::size_t>(i)]));
        return out;
    };
    while (nn >= 0) {
        int its = 0;
        int l = 0;
        do {
            for (l = nn; l >= 1; --l) {
                s = abs(at(l - 1, l - 1)) + abs(at(l, l));
                if (s == 0) s = anorm;
                if (abs(at(l, l - 1)) <= eps * s) {
                    at(l, l - 1) = 0;
                    break;
                }
            }
            x = at(nn, nn);
            if (l == nn) {
                wr[static_cast<std::size_t>(nn)] = x + t;
                wi[static_cast<std::size_t>(nn)] = 0;
                --nn;
            } else {
                y = at(nn - 1, nn - 1);
                w = at(nn, nn - 1) * at(nn - 1, nn);
                if (l == nn - 1) {
                    p = R(0.5) * (y - x);
                    q = p * p + w;
                    z = sqrt(abs(q));
                    x += t;
                    auto& wr1 = wr[static_cast<std::size_t>(nn - 1)];
                    auto& wr0 = wr[static_cast<std::size_t>(nn)];
                    if (q >= 0) {
                        z = p + sign(z, p);
                        wr1 = wr0 = x + z;
                        if (z != 0) wr0 = x - w / z;
                        wi[static_cast<std::size_t>(nn - 1)] = wi[static_cast<std::size_t>(nn)] = 0;
                    } else {
                        wr1 = wr0 = x + p;
                        wi[static_cast<std::size_t>(nn - 1)] = -z;
                        wi[static_cast<std::size_t>(nn)] = z;
                    }
                    nn -= 2;
                } else {
                    if (its == max_its) throw NoConvergence("QR iteration did not converge", collect(nn));
                    if (its > 0 && its % 10 == 0) {
                        // exceptional shift
                        t += x;
                        for (int i = 0; i <= nn; ++i) at(i, i) -= x;
                        s = abs(at(nn, nn - 1)) + abs(at(nn - 1, nn - 2));
                        y = x = R(0.75) * s;
                        w = R(-0.4375) * s * s;
                    }
                    ++its;
                    int m = nn - 2;
                    for (; m >= l; --m) {
                        z = at(m, m);
                        r = x - z;
                        s = y - z;
                        p = (r * s - w) / at(m + 1, m) + at(m, m + 1);
                        q = at(m + 1, m + 1) - z - r - s;
                        r = at(m + 2, m + 1);
                        s = abs(p) + abs(q) + abs(r);
                        p /= s;
                        q /= s;
                        r /= s;
                        if (m == l) break;
                        const R u = abs(at(m, m - 1)) * (abs(q) + abs(r));
                        const R v = abs(p) * (abs(at(m - 1, m - 1)) + abs(z) + abs(at(m + 1, m + 1)));
                        if (u <= eps * v) break;
                    }
                    for (int i = m + 2; i <= nn; ++i) {
                        at(i, i - 2) = 0;
                        if (i != m + 2) at(i, i - 3) = 0;
                    }
                    for (int k = m; k <= nn - 1; ++k) {
                        if (k != m) {
                            p = at(k, k - 1);
                            q = at(k + 1, k - 1);
                            r = 0;
                            if (k != nn - 1) r = at(k + 2, k - 1);
                            x = abs(p) + abs(q) + abs(r);
                            if (x != 0) {
                                p /= x;
                                q /= x;
                                r /= x;
                            }
                        }
                        s = sign(sqrt(p * p + q * q + r * r), p);
                        if (s == 0) continue;
                        if (k == m) {
                            if (l != m) at(k, k - 1) = -at(k, k - 1);
                        } else {
                            at(k, k - 1) = -s * x;
                        }
                        p += s;
                        x = p / s;
                        y = q / s;
                        z = r / s;
                        q /= p;
                        r /= p;
                        for (int j = k; j <= nn; ++j) {
                            p = at(k, j) + q * at(k + 1, j);
                            if (k != nn - 1) {
                                p += r * at(k + 2, j);
                                at(k + 2, j) -= p * z;
                            }
                            at(k + 1, j) -= p * y;
                            at(k, j) -= p * x;
                        }
                        const int mmin = nn < k + 3 ? nn : k + 3;
                        for (int i = l; i <= mmin; ++i) {
                            p = x * at(i, k) + y * at(i, k + 1);
                            if (k != nn - 1) {
                                p += z * at(i, k + 2);
                                at(i, k + 2) -= p * r;
                            }
                            at(i, k + 1) -= p * q;
                            at(i, k) -= p;
                        }
                    }
                }
            }
        } while (nn >= 0 && l < nn - 1);
    }
    std::vector<std::complex<double>> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        out[static_cast<std::size_t>(i)] = {static_cast<double>(wr[static_cast<std::size_t>(i)]),
                                            static_cast<double>(wi[static_cast<std::size_t>(i)])};
    return out;
}

/// balance + hessenberg + hqr on a copy converted to R.
template <class R>
std::vector<std::complex<double>> eigenvalues(const std::vector<double>& m, int n, bool do_balance = true) {
    std::vector<R> a(m.begin(), m.end());
    if (do_balance) balance(a, n);
    hessenberg(a, n);
    return hqr(a, n);
}

}  // namespace hqr
}  // namespace bbt
