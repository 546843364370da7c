#include <doctest.h>

#include <numbers>

#include "bbtspec/errors.hpp"
#include "bbtspec/hqr.hpp"
#include "bbtspec/roots.hpp"
#include "bbtspec/spectra.hpp"
#include "support.hpp"

using namespace bbt;
using bbt::test::stored;
using bbt::test::z_plus_zinv;

namespace {

std::vector<cplx> eigen_oracle(const Truncation& t) {
    const int n = t.dim();
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = t.at(i, j);
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    return {es.eigenvalues().data(), es.eigenvalues().data() + n};
}

// sorted-multiset distance for larger sets: greedy nearest matching
double greedy_distance(std::vector<cplx> a, std::vector<cplx> b) {
    double worst = 0.0;
    for (const auto& x : a) {
        auto it = std::min_element(b.begin(), b.end(), [&](const cplx& u, const cplx& v) { return std::abs(u - x) < std::abs(v - x); });
        worst = std::max(worst, std::abs(*it - x));
        b.erase(it);
    }
    return worst;
}

}  // namespace

TEST_CASE("truncation") {
    auto b1 = stored("b1.json");
    auto t1 = truncation(b1, 1);
    CHECK(t1.a == std::vector<double>{8, -5, -2, 5});
    // upper-left corner of the displayed matrix, with a_{-2,2} = +1 as the symbol requires
    auto t3 = truncation(b1, 3);
    const std::vector<double> want = {8, -5, -2, 0, 0, 0,   //
                                      -2, 5, -4, 1, 0, 0,   //
                                      0, -6, 8, -5, -2, 0,  //
                                      0, 0, -2, 5, -4, 1,   //
                                      0, 0, 0, -6, 8, -5,   //
                                      0, 0, 0, 0, -2, 5};
    CHECK(t3.a == want);
    auto s = truncation(z_plus_zinv(), 2);
    CHECK(s.a == std::vector<double>{0, 1, 1, 0});
    CHECK_THROWS_AS(truncation(b1, 0), InputError);
}

TEST_CASE("truncation agrees with the periodic-sequence matrix") {
    std::vector<std::vector<Scalar>> seqs = {{-2, -5, 8, -2}, {1, -4, 5, -6}};
    auto sym = from_periodic_sequences(seqs, 2, 1);
    auto t = truncation(sym, 6);
    auto direct = periodic_matrix(seqs, 2, 1, 12);
    for (int i = 0; i < 12; ++i)
        for (int j = 0; j < 12; ++j) CHECK(t.at(i, j) == direct[static_cast<std::size_t>(i * 12 + j)].to_double());
}

TEST_CASE("truncation invariants on random symbols") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const int k = 1 + trial % 3;
        auto sym = test::random_symbol(rng, k, 1 + trial % 2, 1 + (trial / 3) % 2);
        auto t = truncation(sym, 6);
        auto t7 = truncation(sym, 7);
        const int N = t.dim();
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) {
                CHECK(t7.at(i, j) == t.at(i, j));  // nesting
                if (i + k < N && j + k < N) CHECK(t.at(i + k, j + k) == t.at(i, j));  // periodicity
            }
    }
}

TEST_CASE("eigenvalues against the Eigen oracle") {
    CHECK(eigenvalues(truncation(z_plus_zinv(), 2)) == std::vector<cplx>{-1.0, 1.0});
    auto b1 = stored("b1.json");
    auto e1 = eigenvalues(truncation(b1, 1));
    CHECK(std::abs(e1[0] - 3.0) < 1e-12);
    CHECK(std::abs(e1[1] - 10.0) < 1e-12);

    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        auto sym = test::random_symbol(rng, 1 + trial % 3, 1, 1);
        auto t = truncation(sym, 8);
        auto ours = eigenvalues(t);
        auto ref = eigen_oracle(t);
        double scale = 1.0;
        for (const auto& z : ref) scale = std::max(scale, std::abs(z));
        CHECK(greedy_distance(ours, ref) <= 1e-6 * scale);
        // conjugation closure
        std::vector<cplx> conj;
        for (const auto& z : ours) conj.push_back(std::conj(z));
        CHECK(greedy_distance(ours, conj) <= 1e-8 * scale);
        // extended precision path agrees
        EigOptions ext;
        ext.precision = Precision::Extended;
        CHECK(greedy_distance(eigenvalues(t, ext), ours) <= 1e-6 * scale);
        // similarity scaling leaves the spectrum alone
        EigOptions sc;
        sc.radius = 0.7;
        CHECK(greedy_distance(eigenvalues(t, sc), ours) <= 1e-6 * scale);
    }
}

TEST_CASE("hqr reports partial results when the cap is hit") {
    std::vector<double> a = {0, 1, 0, 0, 0, 1, 1, 0, 0};  // cyclic permutation, eigenvalues on the unit circle
    bool threw = false;
    try {
        auto h = a;
        hqr::hessenberg(h, 3);
        hqr::hqr(h, 3, 0);
    } catch (const hqr::NoConvergence& e) {
        threw = true;
        CHECK(e.partial.size() < 3);
    }
    CHECK(threw);
    auto ok = hqr::eigenvalues<double>(a, 3);
    for (const auto& z : ok) CHECK(std::abs(std::abs(z) - 1.0) < 1e-12);
}

TEST_CASE("T_100 spectra of B1 and B2 are real to 1e-2") {
    auto e1 = eigenvalues(truncation(stored("b1.json"), 100));
    CHECK(e1.size() == 200);
    CHECK(max_abs_imag(e1) <= 1e-2);
    auto e2 = eigenvalues(truncation(stored("b2.json"), 100));
    CHECK(e2.size() == 300);
    CHECK(max_abs_imag(e2) <= 1e-2);
}

TEST_CASE("lambda0_gap") {
    auto f = char_function(z_plus_zinv());
    CHECK(lambda0_gap(f, 0.0) == doctest::Approx(0.0).epsilon(1e-14));
    const double want = (3.0 + std::sqrt(5.0)) / (3.0 - std::sqrt(5.0)) - 1.0;
    CHECK(std::abs(lambda0_gap(f, 3.0) - want) < 1e-10);

    auto b1 = char_function(stored("b1.json"));
    const cplx l(20.0, 5.0);
    auto oracle = test::companion_roots(b1.z_coeffs(l));
    std::sort(oracle.begin(), oracle.end(), [](const cplx& a, const cplx& b) { return std::abs(a) < std::abs(b); });
    const double g = lambda0_gap(b1, l);
    CHECK(g > 0.0);
    CHECK(std::abs(g - (std::abs(oracle[2]) / std::abs(oracle[1]) - 1.0)) < 1e-9);

    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 50; ++i) {
        const cplx x(u(rng), u(rng));
        CHECK(std::abs(lambda0_gap(b1, x) - lambda0_gap(b1, std::conj(x))) <= 1e-8 * std::max(1.0, lambda0_gap(b1, x)));
    }
}

TEST_CASE("sample_lambda0 for z + 1/z against a 1-D scan") {
    auto f = char_function(z_plus_zinv());
    auto s = sample_lambda0(f, {-3, 3, -3, 3}, 128, {});
    REQUIRE_FALSE(s.points.empty());
    const double diag = s.cell_diagonal();
    for (const auto& p : s.points) {
        const double x = std::clamp(p.lambda.real(), -2.0, 2.0);
        CHECK(std::abs(p.lambda - cplx(x, 0.0)) <= diag);
    }
    // oracle: dense real-axis scan, gap zero exactly on [-2, 2]
    double lo = 1e9, hi = -1e9;
    for (int i = 0; i <= 6000; ++i) {
        const double x = -3.0 + i * 1e-3;
        if (lambda0_gap(f, x) <= 1e-3) {
            lo = std::min(lo, x);
            hi = std::max(hi, x);
        }
    }
    CHECK(lo == doctest::Approx(-2.0).epsilon(1e-3));
    CHECK(hi == doctest::Approx(2.0).epsilon(1e-3));
    double slo = 1e9, shi = -1e9;
    for (const auto& p : s.points) {
        slo = std::min(slo, p.lambda.real());
        shi = std::max(shi, p.lambda.real());
    }
    CHECK(std::abs(slo - lo) <= diag);
    CHECK(std::abs(shi - hi) <= diag);
    auto v = reality_verdict(s);
    CHECK(v.real);
}

TEST_CASE("sample_lambda0 and reality for B1") {
    auto sym = stored("b1.json");
    auto f = char_function(sym);
    auto s = sample_lambda0(f, {-10, 25, -5, 5}, 256, {});
    auto v = reality_verdict(s);
    CHECK(v.real);
    CHECK(v.offenders.empty());
    for (const auto& p : s.points) CHECK(p.gap <= 1e-3);
    // serial and parallel agree
    Lambda0Options serial;
    serial.exec = Exec::Serial;
    auto s2 = sample_lambda0(f, {-10, 25, -5, 5}, 256, serial);
    REQUIRE(s2.points.size() == s.points.size());
    for (std::size_t i = 0; i < s.points.size(); ++i) CHECK(s2.points[i].lambda == s.points[i].lambda);

    // eigenvalues of T_100 sit near Lambda_0 union the G0 candidates
    auto ev = eigenvalues(truncation(sym, 100));
    auto g0 = g0_scan(sym, f, {-10, 25, -5, 5}, 64);
    std::vector<cplx> target;
    for (const auto& p : s.points) target.push_back(p.lambda);
    for (const auto& c : g0.candidates) target.push_back(c.lambda);
    double h1 = 0.0, h2 = 0.0;
    for (const auto& e : ev) {
        double d = 1e300;
        for (const auto& t : target) d = std::min(d, std::abs(e - t));
        h1 = std::max(h1, d);
    }
    for (const auto& t : target) {
        double d = 1e300;
        for (const auto& e : ev) d = std::min(d, std::abs(e - t));
        h2 = std::max(h2, d);
    }
    CHECK(std::max(h1, h2) <= 0.5);
    REQUIRE(g0.candidates.size() == 2);
    CHECK(std::abs(g0.candidates[0].lambda - 4.5) < 1e-6);
    CHECK(std::abs(g0.candidates[1].lambda - 9.0) < 1e-6);
    for (const auto& c : g0.candidates) CHECK(c.abs_c0_doubled < 1e-4);

    Lambda0Sample empty;
    CHECK_THROWS_AS(reality_verdict(empty), DegenerateError);
}

TEST_CASE("c0 for z + 1/z at lambda = 3") {
    auto sym = z_plus_zinv();
    auto f = char_function(sym);
    const cplx v = c0(sym, f, 3.0);
    CHECK(std::abs(v - (-1.0 / std::sqrt(5.0))) <= 1e-8);
    C0Config a, b;
    a.radius = 1.0;
    b.radius = 1.5;
    CHECK(std::abs(c0(sym, f, 3.0, a) - c0(sym, f, 3.0, b)) <= 1e-8);
    C0Config bad;
    bad.radius = 3.0;
    CHECK_THROWS_AS(c0(sym, f, 3.0, bad), InputError);
    CHECK_THROWS_AS(c0(sym, f, 0.0), DegenerateError);  // on Lambda_0
}

TEST_CASE("c0 quadrature converges on the stored examples") {
    for (const char* name : {"b1.json", "b2.json", "gammab.json"}) {
        auto sym = stored(name);
        auto f = char_function(sym);
        for (cplx l : {cplx(20.0, 0.0), cplx(-30.0, 0.0), cplx(5.0, 30.0)}) {
            const auto r = c0_detail(sym, f, l);
            for (int n = 256; n <= 1024; n *= 2) {
                const cplx a = c0_fixed(sym, l, r.radius, n);
                const cplx b = c0_fixed(sym, l, r.radius, 2 * n);
                CHECK(std::abs(a - b) <= 1e-8 * std::max(1.0, std::abs(b)));
            }
            CHECK(std::abs(r.value - r.previous) <= 1e-8 * std::max(1.0, std::abs(r.value)));
        }
    }
    auto b1 = stored("b1.json");
    CHECK(std::abs(c0(b1, char_function(b1), 20.0)) > 0.0);
}

TEST_CASE("g0_scan on z + 1/z finds nothing") {
    auto sym = z_plus_zinv();
    auto f = char_function(sym);
    auto g = g0_scan(sym, f, {-4, 4, -3, 3}, 32);
    CHECK(g.candidates.empty());
    // box inside Lambda_0: every node skipped
    auto inside = g0_scan(sym, f, {-1, 1, -1e-9, 1e-9}, 16);
    CHECK(inside.candidates.empty());
    CHECK(inside.evaluated == 0);
}

TEST_CASE("nj_gap") {
    auto k1 = z_plus_zinv();
    auto f1 = char_function(k1);
    const cplx z(0.4, 0.3);
    CHECK(nj_gap(f1, z, 1) == doctest::Approx(lambda0_gap(f1, z + 1.0 / z)));
    auto f = char_function(stored("b1.json"));
    for (int j = 1; j <= 2; ++j) {
        double best = 1e300;
        for (int i = 0; i <= 4000; ++i) {
            const double t = 0.01 * std::pow(1e4, i / 4000.0);
            best = std::min(best, nj_gap(f, t, j));
        }
        CHECK(best <= 1e-2);
        CHECK(nj_gap(f, 1e3, j) > 0.0);
    }
    CHECK_THROWS_AS(nj_gap(f, 1.0, 3), InputError);
}
