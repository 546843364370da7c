#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "bbtspec/poly2.hpp"
#include "bbtspec/symbol.hpp"

namespace bbt {

/// f(z, lambda) = det(B(z) - lambda I) with its two coefficient views:
/// g[l](z), the coefficient of lambda^l, and fm[m + p](lambda), the
/// coefficient of z^m. p and q are read off the expansion (z-order -p,
/// z-degree q), never taken from the symbol's band bounds.
struct CharFunction {
    int k = 0;
    int p = 0;
    int q = 0;
    Poly2<double> coeffs;                 // keys (z exponent, lambda exponent)
    std::optional<Poly2<Rational>> exact;  // present when built from an exact symbol
    std::vector<LaurentPoly<double>> g;   // size k + 1
    std::vector<LaurentPoly<double>> fm;  // size p + q + 1, polynomials in lambda
    double scale = 0.0;                   // max |coefficient|

    cplx eval(cplx z, cplx lambda) const;

    /// Ascending coefficients of z^p f(z, lambda) in z (size p + q + 1).
    std::vector<cplx> z_coeffs(cplx lambda) const;
    /// Ascending coefficients of f(z, .) in lambda (size k + 1). z != 0.
    std::vector<cplx> lambda_coeffs(cplx z) const;

    /// Number of roots of z^p f that tend to 0 as |lambda| grows; Lambda_0
    /// compares the moduli of roots split() and split() + 1.
    int split() const { return p; }
};

/// Builds the views from an expanded polynomial. Float input is trimmed
/// with the 1e-12 relative zero rule first.
CharFunction make_char_function(int k, const Poly2<Rational>& f);
CharFunction make_char_function(int k, Poly2<double> f);

/// Exact expansion for exact symbols, float expansion otherwise.
CharFunction char_function(const MatrixSymbol& sym);

/// (ord g_l, deg g_l). Throws DegenerateError when g_l vanishes.
std::pair<int, int> coeff_ord_deg(const CharFunction& f, int l);

/// Predicted (ord, deg) of g_l for a generic symbol with the given p, q:
/// (ceil(-p (k - l) / k), floor(q (k - l) / k)).
std::pair<int, int> generic_ord_deg(int k, int p, int q, int l);

bool is_generic(const CharFunction& f, int l);
bool is_generic(const CharFunction& f);

}  // namespace bbt
