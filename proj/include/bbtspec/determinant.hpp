#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace bbt {

/// Determinant over a commutative ring by Laplace expansion along rows,
/// memoized over column subsets: O(n 2^n) ring products, no division.
/// `m` is row-major n x n.
template <class R>
R subset_determinant(const std::vector<R>& m, int n, const R& zero, const R& one) {
    if (n < 0 || n > 20 || static_cast<int>(m.size()) != n * n)
        throw std::invalid_argument("subset_determinant: bad dimensions");
    if (n == 0) return one;
    const std::uint32_t full = (1u << n) - 1u;
    // minors[mask]: determinant of rows 0..popcount(mask)-1 restricted to columns in mask
    std::vector<R> minors(std::size_t{1} << n, zero);
    minors[0] = one;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const int row = std::popcount(mask) - 1;
        R acc = zero;
        int below = 0;  // columns in mask with index < c, for the sign
        for (int c = 0; c < n; ++c) {
            if (!(mask & (1u << c))) continue;
            const std::uint32_t rest = mask & ~(1u << c);
            // sign of moving column c past the remaining higher columns of the row's minor
            const int higher = std::popcount(mask) - 1 - below;
            const R& entry = m[static_cast<std::size_t>(row) * n + c];
            R term = entry * minors[rest];
            if (higher % 2 == 0) acc += term;
            else acc -= term;
            ++below;
        }
        minors[mask] = acc;
    }
    return minors[full];
}

template <class R>
R subset_determinant(const std::vector<R>& m, int n) {
    return subset_determinant(m, n, R(0), R(1));
}

}  // namespace bbt
