#pragma once

#include <vector>

#include "bbtspec/charfun.hpp"
#include "bbtspec/contour.hpp"
#include "bbtspec/rational.hpp"

namespace bbt {

/// g(x, y) from eliminating a real lambda out of Re and Im of z^p f(x+iy, lambda).
/// g has integer coefficients with gcd 1 and a positive leading coefficient
/// (largest key); the removed factors are y^y_power and (x^2+y^2)^r2_power.
struct ImplicitCurve {
    Poly2<Rational> g;  // keys (x exponent, y exponent)
    int y_power = 0;
    int r2_power = 0;
    Poly2<Rational> resultant;  // before normalization

    double eval(double x, double y) const;
    /// (dg/dx, dg/dy)
    std::pair<double, double> gradient(double x, double y) const;
    /// sum |c| |x|^a |y|^b, the local coefficient scale
    double scale_at(double x, double y) const;
};

/// Exact resultant. Throws InputError for float symbols or when k > 4 or
/// p + q > 8, DegenerateError when the resultant vanishes identically.
ImplicitCurve gamma_implicit(const CharFunction& f);

/// Real and imaginary parts of z^p f(x + iy, a) as polynomials in (x, y)
/// indexed by the power of a: u[i], v[i].
std::pair<std::vector<Poly2<Rational>>, std::vector<Poly2<Rational>>> real_imag_split(const CharFunction& f);

/// Sylvester resultant in a of two polynomials with bivariate coefficients.
Poly2<Rational> sylvester_resultant(const std::vector<Poly2<Rational>>& u, const std::vector<Poly2<Rational>>& v);

/// Exact division by a polynomial monic in x (leading term x^d, no y).
/// Returns false when the remainder is non-zero.
bool divide_monic_x(const Poly2<Rational>& num, const Poly2<Rational>& den, Poly2<Rational>& quotient);

ScalarField implicit_field(const ImplicitCurve& c, const Box& box, int res);

struct FilterStats {
    std::size_t checked = 0;
    std::size_t rejected = 0;
};

/// Traces g = 0, snaps each polyline point onto the curve by Newton steps
/// along the gradient, and keeps only points where some branch is real
/// (gamma_member with tol). Components losing points are split into open
/// runs of surviving points.
ContourSet trace_implicit(const ImplicitCurve& c, const CharFunction& f, const Box& box, int res, double tol = 1e-6,
                          FilterStats* stats = nullptr);

}  // namespace bbt
