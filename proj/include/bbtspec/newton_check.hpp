#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "bbtspec/newton.hpp"
#include "bbtspec/symbol.hpp"

namespace bbt {

/// f(z, lambda) by the Leibniz permutation sum over det(B(z) - lambda I),
/// independent of char_function's expansion. Exact symbols only.
Poly2<Rational> leibniz_char_poly(const MatrixSymbol& sym);

/// Random integer symbol with blocks -r..s, entries uniform in [lo, hi],
/// re-drawn while a boundary block has an all-zero row or column.
MatrixSymbol random_dense_symbol(std::mt19937_64& rng, int k, int r = 1, int s = 1, int lo = -9, int hi = 9);

struct NewtonTrial {
    int index = 0;
    int k = 0;
    int p = 0;
    int q = 0;
    bool matches_oracle = false;  // expansion and hull agree with the Leibniz oracle
    bool triangle = false;        // hull is (-p,0), (q,0), (0,k)
    bool in_triangle = false;     // support inside that triangle
    bool generic = false;         // every g_l has the predicted ord and deg
    std::vector<LatticePoint> vertices;
};

struct NewtonCheckSummary {
    std::vector<NewtonTrial> trials;
    int oracle_failures = 0;
    int non_generic = 0;
    int non_triangle = 0;
};

/// Trials alternate k over `ks`. Deterministic for a given seed.
NewtonCheckSummary newton_check(int trials, const std::vector<int>& ks, std::uint64_t seed);

/// One trial on a given symbol.
NewtonTrial newton_trial(const MatrixSymbol& sym);

}  // namespace bbt
