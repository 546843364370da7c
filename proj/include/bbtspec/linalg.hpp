#pragma once

#include <complex>
#include <optional>
#include <vector>

namespace bbt {

using cplx = std::complex<double>;

/// In-place LU with partial pivoting of a row-major n x n complex matrix.
/// Returns false when a pivot is exactly zero or below rel_tol * max|a|.
bool lu_factor(std::vector<cplx>& a, int n, std::vector<int>& piv, double rel_tol = 1e-14);

/// Determinant by LU; zero for a singular matrix.
cplx determinant(std::vector<cplx> a, int n);

/// Inverse, or nullopt when singular to rel_tol.
std::optional<std::vector<cplx>> inverse(const std::vector<cplx>& a, int n, double rel_tol = 1e-14);

}  // namespace bbt
