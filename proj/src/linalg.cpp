#include "bbtspec/linalg.hpp"

#include <cmath>

namespace bbt {

bool lu_factor(std::vector<cplx>& a, int n, std::vector<int>& piv, double rel_tol) {
    piv.assign(static_cast<std::size_t>(n), 0);
    double amax = 0.0;
    for (const auto& v : a) amax = std::max(amax, std::abs(v));
    const double cut = rel_tol * amax;
    auto at = [&](int i, int j) -> cplx& { return a[static_cast<std::size_t>(i) * n + j]; };
    for (int c = 0; c < n; ++c) {
        int best = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(at(r, c)) > std::abs(at(best, c))) best = r;
        piv[static_cast<std::size_t>(c)] = best;
        if (!(std::abs(at(best, c)) > cut)) return false;
        if (best != c)
            for (int j = 0; j < n; ++j) std::swap(at(c, j), at(best, j));
        const cplx d = at(c, c);
        for (int r = c + 1; r < n; ++r) {
            const cplx f = at(r, c) / d;
            at(r, c) = f;
            if (f == cplx(0.0, 0.0)) continue;
            for (int j = c + 1; j < n; ++j) at(r, j) -= f * at(c, j);
        }
    }
    return true;
}

cplx determinant(std::vector<cplx> a, int n) {
    std::vector<int> piv;
    if (!lu_factor(a, n, piv, 0.0)) return {0.0, 0.0};
    cplx d{1.0, 0.0};
    for (int i = 0; i < n; ++i) {
        d *= a[static_cast<std::size_t>(i) * n + i];
        if (piv[static_cast<std::size_t>(i)] != i) d = -d;
    }
    return d;
}

std::optional<std::vector<cplx>> inverse(const std::vector<cplx>& m, int n, double rel_tol) {
    std::vector<cplx> a = m;
    std::vector<int> piv;
    if (!lu_factor(a, n, piv, rel_tol)) return std::nullopt;
    std::vector<cplx> inv(static_cast<std::size_t>(n) * n, cplx(0.0, 0.0));
    for (int col = 0; col < n; ++col) {
        std::vector<cplx> b(static_cast<std::size_t>(n), cplx(0.0, 0.0));
        b[static_cast<std::size_t>(col)] = 1.0;
        // apply the row swaps in order
        for (int i = 0; i < n; ++i) std::swap(b[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(piv[static_cast<std::size_t>(i)])]);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < i; ++j) b[static_cast<std::size_t>(i)] -= a[static_cast<std::size_t>(i) * n + j] * b[static_cast<std::size_t>(j)];
        for (int i = n - 1; i >= 0; --i) {
            for (int j = i + 1; j < n; ++j) b[static_cast<std::size_t>(i)] -= a[static_cast<std::size_t>(i) * n + j] * b[static_cast<std::size_t>(j)];
            b[static_cast<std::size_t>(i)] /= a[static_cast<std::size_t>(i) * n + i];
        }
        for (int i = 0; i < n; ++i) inv[static_cast<std::size_t>(i) * n + col] = b[static_cast<std::size_t>(i)];
    }
    return inv;
}

}  // namespace bbt
