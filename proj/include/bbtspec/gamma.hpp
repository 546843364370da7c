#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bbtspec/charfun.hpp"
#include "bbtspec/contour.hpp"
#include "bbtspec/spectra.hpp"

namespace bbt {

/// min_j |Im lambda_j(z)| <= tol. Throws DegenerateError at z = 0.
bool gamma_member(const CharFunction& f, cplx z, double tol);

/// P(z) = prod_j Im lambda_j(z); NaN at z = 0.
double gamma_sign(const CharFunction& f, cplx z);

/// P on the node grid of `box` (res cells on the longer side). Nodes within
/// two cells of the origin, and nodes where P is not finite, are masked.
ScalarField sign_field(const CharFunction& f, const Box& box, int res, Exec exec = Exec::Parallel);

/// Gamma traced in the closed upper half of a box symmetric about the real
/// axis, on rows at half-cell offsets so no node lies on the axis. Arcs
/// meeting the axis at both ends are closed with their mirror image; loops
/// and open arcs are mirrored as separate components. Non-symmetric boxes
/// fall back to plain marching squares on sign_field.
ContourSet trace_gamma(const CharFunction& f, const Box& box, int res, Exec exec = Exec::Parallel);

struct RayResult {
    int crossings = 0;
    std::vector<double> radii;  // located crossings, ascending
    int skipped = 0;            // sample points where P was not finite
};

/// Sign changes of P along {t d : r_min <= t <= r_max}, log-spaced samples,
/// each bracket bisected to relative 1e-6.
RayResult ray_crossings(const CharFunction& f, cplx direction, double r_min, double r_max, int samples = 1024);

/// Minimum over `rays` directions exp(2 pi i (m + 1/2) / rays).
int min_ray_crossings(const CharFunction& f, int rays = 16, double r_min = 1e-2, double r_max = 1e2, int samples = 1024);

/// Square box of half-width 1.5 max|x| over sign changes of P(x + i eps)
/// on the real axis (|x| log-scanned over [1e-3, 1e3]), clipped to [0.5, 10].
Box default_gamma_box(const CharFunction& f);

/// Default Lambda_0 box: sp(T_n) bounding box padded 10% in x, half-height
/// max(1, 1.5 max|Im|).
Box default_lambda0_box(const MatrixSymbol& sym, int n = 100);

struct VerdictConfig {
    std::optional<Box> lambda0_box;
    int lambda0_res = 4096;
    double tau = 1e-3;
    std::optional<Box> gamma_box;
    int gamma_res = 512;
    int rays = 16;
    Exec exec = Exec::Parallel;
};

struct OvalVerdict {
    int k = 0;
    bool real = false;
    double lambda0_max_imag = 0;
    double lambda0_tolerance = 0;
    std::size_t lambda0_points = 0;
    OvalCensus census;
    int min_crossings = 0;
    bool ovals_match_k = false;   // enclosing == k
    bool rays_reach_k = false;    // min crossings >= k
    bool agreement = false;       // real <=> enclosing == k
    Box lambda0_box;
    Box gamma_box;
    std::vector<std::string> missing;  // sections that failed
};

/// Numerical evidence for both sides of the oval criterion; never a proof.
OvalVerdict oval_verdict(const MatrixSymbol& sym, const VerdictConfig& cfg = {});

}  // namespace bbt
