#include "bbtspec/newton_check.hpp"

#include <algorithm>
#include <numeric>

#include "bbtspec/errors.hpp"

namespace bbt {

Poly2<Rational> leibniz_char_poly(const MatrixSymbol& sym) {
    if (!sym.exact()) throw InputError("Leibniz oracle needs an exact symbol");
    const int k = sym.k();
    using P2 = Poly2<Rational>;
    std::vector<P2> m(static_cast<std::size_t>(k) * k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            P2 e;
            const auto ep = sym.entry_poly_exact(i, j);
            for (const auto& [a, c] : ep.coeffs()) e.add_term(a, 0, c);
            if (i == j) e.add_term(0, 1, Rational(-1));
            m[static_cast<std::size_t>(i) * k + j] = e;
        }
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    P2 det;
    do {
        int inversions = 0;
        for (int a = 0; a < k; ++a)
            for (int b = a + 1; b < k; ++b) inversions += perm[a] > perm[b];
        P2 term = P2::constant(Rational(inversions % 2 ? -1 : 1));
        for (int i = 0; i < k; ++i) term = term * m[static_cast<std::size_t>(i) * k + perm[i]];
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

MatrixSymbol random_dense_symbol(std::mt19937_64& rng, int k, int r, int s, int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    auto degenerate = [k](const Block& b) {
        for (int i = 0; i < k; ++i) {
            bool row = true, col = true;
            for (int j = 0; j < k; ++j) {
                row = row && b[static_cast<std::size_t>(i * k + j)].is_zero();
                col = col && b[static_cast<std::size_t>(j * k + i)].is_zero();
            }
            if (row || col) return true;
        }
        return false;
    };
    for (;;) {
        std::map<int, Block> blocks;
        for (int m = -r; m <= s; ++m) {
            Block b;
            for (int i = 0; i < k * k; ++i) b.emplace_back(static_cast<long>(d(rng)));
            blocks[m] = std::move(b);
        }
        if (degenerate(blocks[-r]) || degenerate(blocks[s])) continue;
        return MatrixSymbol(k, std::move(blocks));
    }
}

NewtonTrial newton_trial(const MatrixSymbol& sym) {
    NewtonTrial t;
    const CharFunction f = char_function(sym);
    t.k = f.k;
    t.p = f.p;
    t.q = f.q;
    const NewtonPolygon hull = newton_polygon(f);
    t.vertices = hull.vertices;
    const auto oracle = leibniz_char_poly(sym);
    t.matches_oracle = f.exact && *f.exact == oracle && convex_hull(oracle.support()).vertices == hull.vertices;
    t.triangle = hull.is_triangle(f.p, f.q, f.k);
    t.in_triangle = support_in_triangle(f);
    try {
        t.generic = is_generic(f);
    } catch (const DegenerateError&) {
        t.generic = false;
    }
    return t;
}

NewtonCheckSummary newton_check(int trials, const std::vector<int>& ks, std::uint64_t seed) {
    if (trials < 1) throw InputError("newton-check needs at least one trial");
    if (ks.empty()) throw InputError("newton-check needs at least one k");
    std::mt19937_64 rng(seed);
    NewtonCheckSummary out;
    for (int i = 0; i < trials; ++i) {
        const int k = ks[static_cast<std::size_t>(i) % ks.size()];
        NewtonTrial t = newton_trial(random_dense_symbol(rng, k));
        t.index = i;
        out.oracle_failures += !t.matches_oracle;
        out.non_generic += !t.generic;
        out.non_triangle += !t.triangle;
        out.trials.push_back(std::move(t));
    }
    return out;
}

}  // namespace bbt
