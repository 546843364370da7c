#pragma once

#include <span>
#include <vector>

#include "bbtspec/charfun.hpp"

namespace bbt {

/// Roots sorted by (modulus, argument in [0, 2 pi)). Roots whose moduli agree
/// to a relative 1e-12 are treated as tied and ordered by argument.
struct RootList {
    std::vector<cplx> roots;
    std::vector<double> residuals;        // |P(root)|
    std::vector<double> backward_errors;  // |P(root)| / sum_i |c_i| |root|^i
    bool low_confidence = false;          // some backward error above 1e-9
    bool clustered = false;               // two roots closer than 1e-7 * max(1, |root|)
    int at_infinity = 0;                  // degree lost to vanishing leading coefficients
    int at_origin = 0;                    // roots equal to zero (vanishing trailing coefficients)

    std::size_t size() const { return roots.size(); }
    const cplx& operator[](std::size_t i) const { return roots[i]; }
};

/// All roots of sum_i c_i z^i (ascending coefficients) with multiplicity.
/// Coefficients with |c| <= trim_tol * max|c| at either end are dropped;
/// dropped leading ones count as roots at infinity, trailing ones as exact
/// zero roots. Aberth-Ehrlich iteration from Newton-polygon starting
/// circles, then Newton polishing on the original polynomial.
/// Throws DegenerateError for the zero polynomial or degree 0.
RootList roots(std::span<const cplx> coeffs, double trim_tol = 1e-12);

/// Sort key used by RootList.
void sort_roots(std::vector<cplx>& zs);

/// Roots of z^p f(z, lambda) in z: p + q roots when f_q(lambda) and
/// f_{-p}(lambda) are nonzero. Never throws for degenerate lambda; check
/// at_infinity / at_origin.
RootList sorted_roots_z(const CharFunction& f, cplx lambda);

/// The k roots lambda_j(z) of f(z, .). Throws DegenerateError for z == 0.
RootList branches_lambda(const CharFunction& f, cplx z);

}  // namespace bbt
