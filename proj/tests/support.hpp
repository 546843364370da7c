// Shared helpers and independent oracles for the test binaries.
#pragma once

#include <algorithm>
#include <complex>
#include <filesystem>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bbtspec/symbol.hpp"

namespace bbt::test {

inline std::filesystem::path data_path(const std::string& name) {
    return std::filesystem::path(BBTSPEC_DATA_DIR) / "symbols" / name;
}

inline MatrixSymbol stored(const std::string& name) { return load_symbol(data_path(name)); }

inline MatrixSymbol z_plus_zinv() {
    std::map<int, Block> b;
    b[-1] = {Scalar(1)};
    b[1] = {Scalar(1)};
    return MatrixSymbol(1, b);
}

/// B3 with the placeholder replaced.
inline MatrixSymbol b3(int zeta) {
    std::map<int, Block> blocks;
    auto s = [](long v) { return Scalar(v); };
    blocks[-2] = {s(0), s(0), s(-91), s(0)};
    blocks[-1] = {s(19), s(-57), s(-65), s(-9)};
    blocks[0] = {s(zeta), s(61), s(-13), s(-40)};
    blocks[1] = {s(0), s(-86), s(0), s(0)};
    return MatrixSymbol(2, blocks);
}

/// Random integer symbol, entries in [lo, hi], blocks -r..s.
/// With dense=true the boundary blocks get no zero row or column.
inline MatrixSymbol random_symbol(std::mt19937_64& rng, int k, int r, int s, int lo = -9, int hi = 9,
                                  bool dense = false) {
    std::uniform_int_distribution<int> d(lo, hi);
    for (;;) {
        std::map<int, Block> blocks;
        for (int m = -r; m <= s; ++m) {
            Block b;
            for (int i = 0; i < k * k; ++i) b.emplace_back(static_cast<long>(d(rng)));
            blocks[m] = b;
        }
        auto bad = [&](const Block& b) {
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
        bool ok = true;
        for (int m : {-r, s}) {
            const auto& b = blocks[m];
            bool allz = std::all_of(b.begin(), b.end(), [](const Scalar& x) { return x.is_zero(); });
            if (allz || (dense && bad(b))) ok = false;
        }
        if (ok) return MatrixSymbol(k, blocks);
    }
}

/// Determinant by the permutation sum.
template <class T>
T permutation_det(const std::vector<T>& m, int n, const T& zero, const T& one) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    T total = zero;
    do {
        int inversions = 0;
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (perm[static_cast<std::size_t>(a)] > perm[static_cast<std::size_t>(b)]) ++inversions;
        T prod = one;
        for (int i = 0; i < n; ++i) prod = prod * m[static_cast<std::size_t>(i * n + perm[static_cast<std::size_t>(i)])];
        if (inversions % 2 == 0) total = total + prod;
        else total = total - prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

template <class T>
T permutation_det(const std::vector<T>& m, int n) {
    return permutation_det(m, n, T(0), T(1));
}

/// Roots of an ascending-coefficient polynomial via companion eigenvalues.
inline std::vector<std::complex<double>> companion_roots(const std::vector<std::complex<double>>& c) {
    const int n = static_cast<int>(c.size()) - 1;
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(n)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp);
    std::vector<std::complex<double>> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
    return out;
}

/// Minimum over permutations of max |a_i - b_perm(i)| (n <= 8).
inline double matching_distance(std::vector<std::complex<double>> a, std::vector<std::complex<double>> b) {
    if (a.size() != b.size()) return 1e300;
    std::vector<int> perm(b.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i)
            worst = std::max(worst, std::abs(a[i] - b[static_cast<std::size_t>(perm[i])]));
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

inline std::complex<double> random_unit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 2.0 * 3.141592653589793);
    return std::polar(1.0, u(rng));
}

}  // namespace bbt::test
