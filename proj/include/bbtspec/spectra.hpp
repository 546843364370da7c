#pragma once

#include <optional>
#include <vector>

#include "bbtspec/charfun.hpp"
#include "bbtspec/grid.hpp"
#include "bbtspec/symbol.hpp"

namespace bbt {

/// T_n(B) = (A_{i-j})_{i,j=1..n}, dense nk x nk, row-major.
struct Truncation {
    int n = 0;
    int k = 0;
    std::vector<double> a;

    int dim() const { return n * k; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * dim() + j]; }
};

Truncation truncation(const MatrixSymbol& sym, int n);

enum class Precision { Double, Extended };

struct EigOptions {
    bool balance = true;
    Precision precision = Precision::Double;
    /// Diagonal similarity D T D^{-1}, D = diag(radius^{I/k}) over scalar
    /// indices I. Spectrum unchanged in exact arithmetic. 1 = off.
    double radius = 1.0;
};

/// All nk eigenvalues, sorted by (re, im). Throws hqr::NoConvergence
/// (a ConvergenceError) with the converged part on failure.
std::vector<cplx> eigenvalues(const Truncation& t, const EigOptions& opt = {});

double max_abs_imag(const std::vector<cplx>& v);

/// |z_{p+1}(lambda)| / |z_p(lambda)| - 1 over the moduli-sorted roots of
/// z^p f(z, lambda). Throws DegenerateError when f_q(lambda) or f_{-p}(lambda)
/// vanishes.
double lambda0_gap(const CharFunction& f, cplx lambda);

struct Lambda0Point {
    cplx lambda;
    double gap;
};

struct Lambda0Sample {
    Grid grid;
    double threshold = 0;
    double refine_threshold = 0;
    std::vector<Lambda0Point> points;  // sorted by (re, im)
    long skipped = 0;                  // degenerate grid nodes
    long refined = 0;                  // points added by edge refinement

    double cell_diagonal() const { return grid.cell_diagonal(); }
};

struct Lambda0Options {
    double tau = 1e-3;
    /// local minima of the gap along grid rows and columns below this value
    /// are refined; <= 0 means 10 tau
    double refine_below = 0.0;
    Exec exec = Exec::Parallel;
};

/// Gap on the (res+1)^2 node grid of `box`, nodes with gap <= tau kept,
/// plus one refinement pass (golden section) on every row/column edge pair
/// bracketing a discrete local minimum.
Lambda0Sample sample_lambda0(const CharFunction& f, const Box& box, int res, const Lambda0Options& opt = {});

struct RealityVerdict {
    bool real = true;
    double tolerance = 0;          // the cell diagonal
    std::vector<cplx> offenders;   // |Im| > tolerance, by |Im| descending
    double max_abs_imag = 0;
};

/// Throws DegenerateError on an empty sample.
RealityVerdict reality_verdict(const Lambda0Sample& s);

struct C0Config {
    int nodes = 64;                       // initial N, power of two >= 64
    int max_nodes = 1 << 14;
    std::optional<double> radius;         // default: geometric mean rule
    double tol = 1e-8;                    // |c0(N) - c0(2N)| <= tol * max(1, |c0|)
};

struct C0Result {
    cplx value;
    int nodes = 0;        // N at which convergence was accepted
    double radius = 0;
    cplx previous;        // value at N / 2
};

/// det of the r x r block matrix (1 / 2 pi i) \oint z^{mu - nu} (B(z) - lambda)^{-1} dz / z
/// on a circle separating the p small roots of z^p f(z, lambda).
C0Result c0_detail(const MatrixSymbol& sym, const CharFunction& f, cplx lambda, const C0Config& cfg = {});
cplx c0(const MatrixSymbol& sym, const CharFunction& f, cplx lambda, const C0Config& cfg = {});

/// Value at a fixed node count (no convergence loop); for tests.
cplx c0_fixed(const MatrixSymbol& sym, cplx lambda, double radius, int nodes, double rotation = 0.0);

struct G0Candidate {
    cplx lambda;
    double abs_c0;
    double abs_c0_doubled;  // re-verified with twice the nodes
};

struct G0Scan {
    std::vector<G0Candidate> candidates;
    long skipped = 0;
    long evaluated = 0;
};

/// Best effort: |c0| on the grid where gap > 1e-3; strict local minima
/// (8-neighbourhood) are refined by coordinate descent and kept when the
/// refined |c0| < 1e-4.
G0Scan g0_scan(const MatrixSymbol& sym, const CharFunction& f, const Box& box, int res, Exec exec = Exec::Parallel);

/// lambda0_gap(f, lambda_j(z)), j = 1..k in moduli order.
double nj_gap(const CharFunction& f, cplx z, int j);

}  // namespace bbt
