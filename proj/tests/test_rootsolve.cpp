#include <doctest.h>

#include <numbers>

#include "bbtspec/charfun.hpp"
#include "bbtspec/errors.hpp"
#include "bbtspec/roots.hpp"
#include "support.hpp"

using namespace bbt;
using bbt::test::stored;

namespace {

CharFunction z_plus_zinv() {
    std::map<int, Block> b;
    b[-1] = {Scalar(1)};
    b[1] = {Scalar(1)};
    return char_function(MatrixSymbol(1, b));
}

}  // namespace

TEST_CASE("roots: small polynomials") {
    std::vector<cplx> c = {-1.0, 0.0, 1.0};
    auto r = roots(c);
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0] - cplx(1.0, 0.0)) < 1e-14);
    CHECK(std::abs(r[1] - cplx(-1.0, 0.0)) < 1e-14);

    std::vector<cplx> c2 = {1.0, -3.0, 1.0};
    auto r2 = roots(c2);
    CHECK(std::abs(r2[0] - (3.0 - std::sqrt(5.0)) / 2.0) < 1e-14);
    CHECK(std::abs(r2[1] - (3.0 + std::sqrt(5.0)) / 2.0) < 1e-14);

    std::vector<cplx> zero = {0.0, 0.0};
    CHECK_THROWS_AS(roots(zero), DegenerateError);
    std::vector<cplx> constant = {2.0};
    CHECK_THROWS_AS(roots(constant), DegenerateError);

    std::vector<cplx> trailing = {0.0, 0.0, 2.0, 1.0};
    auto r3 = roots(trailing);
    CHECK(r3.at_origin == 2);
    CHECK(r3.size() == 3);
    CHECK(std::abs(r3[2] + 2.0) < 1e-14);
}

TEST_CASE("roots: B1 at lambda = 0 against the companion oracle") {
    std::vector<cplx> c = {-2.0, -22.0, 6.0, -12.0};
    auto r = roots(c);
    auto oracle = test::companion_roots(c);
    CHECK(test::matching_distance(r.roots, oracle) < 1e-10);
    for (double res : r.residuals) CHECK(res <= 1e-10 * 22.0);
    CHECK_FALSE(r.low_confidence);
    for (std::size_t i = 1; i < r.size(); ++i) CHECK(std::abs(r[i - 1]) <= std::abs(r[i]));
}

TEST_CASE("roots: random polynomials, Vieta and conjugation") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int t = 0; t < 200; ++t) {
        const int n = 1 + t % 12;
        std::vector<cplx> c;
        for (int i = 0; i <= n; ++i) c.emplace_back(u(rng), 0.0);
        if (std::abs(c.back()) < 1e-3) c.back() = 1.0;
        if (std::abs(c.front()) < 1e-3) c.front() = 1.0;
        auto r = roots(c);
        REQUIRE(r.size() == static_cast<std::size_t>(n));
        cplx sum{0.0, 0.0}, prod{1.0, 0.0};
        for (const auto& z : r.roots) {
            sum += z;
            prod *= z;
        }
        const cplx want_sum = -c[static_cast<std::size_t>(n - 1)] / c[static_cast<std::size_t>(n)];
        const cplx want_prod = (n % 2 == 0 ? 1.0 : -1.0) * c[0] / c[static_cast<std::size_t>(n)];
        double scale_sum = 0.0;
        for (const auto& z : r.roots) scale_sum += std::abs(z);
        CHECK(std::abs(sum - want_sum) <= 1e-8 * std::max(1.0, scale_sum));
        CHECK(std::abs(prod - want_prod) <= 1e-8 * std::max(1.0, std::abs(want_prod)));
        std::vector<cplx> conj;
        for (const auto& z : r.roots) conj.push_back(std::conj(z));
        if (n <= 8) CHECK(test::matching_distance(r.roots, conj) <= 1e-8 * std::max(1.0, scale_sum));
        if (n <= 8) CHECK(test::matching_distance(r.roots, test::companion_roots(c)) <= 1e-7 * std::max(1.0, scale_sum));
    }
}

TEST_CASE("roots: deterministic and clustered flag") {
    std::vector<cplx> c = {1.0, -2.0, 1.0};  // (z-1)^2
    auto a = roots(c);
    auto b = roots(c);
    CHECK(a.roots == b.roots);
    CHECK(a.clustered);
    std::vector<cplx> w = {1e6, -1e6 * 1.001, 1.0};  // widely spread roots
    auto r = roots(w);
    CHECK(std::abs(r[0] - 1.0) < 1e-3);
}

TEST_CASE("sorted_roots_z") {
    auto f = z_plus_zinv();
    auto r0 = sorted_roots_z(f, 0.0);
    REQUIRE(r0.size() == 2);
    CHECK(std::abs(r0[0] - cplx(0.0, 1.0)) < 1e-14);
    CHECK(std::abs(r0[1] - cplx(0.0, -1.0)) < 1e-14);
    auto r3 = sorted_roots_z(f, 3.0);
    CHECK(std::abs(r3[0] - (3.0 - std::sqrt(5.0)) / 2.0) < 1e-14);
    CHECK(std::abs(r3[1] - (3.0 + std::sqrt(5.0)) / 2.0) < 1e-14);

    auto b1 = char_function(stored("b1.json"));
    auto r = sorted_roots_z(b1, 0.0);
    std::vector<cplx> c = {-2.0, -22.0, 6.0, -12.0};
    CHECK(test::matching_distance(r.roots, test::companion_roots(c)) < 1e-10);
}

TEST_CASE("branches_lambda") {
    auto b1 = char_function(stored("b1.json"));
    auto r = branches_lambda(b1, 1.0);
    CHECK(std::abs(r[0] - (6.0 - std::sqrt(66.0))) < 1e-12);
    CHECK(std::abs(r[1] - (6.0 + std::sqrt(66.0))) < 1e-12);
    CHECK_THROWS_AS(branches_lambda(b1, 0.0), DegenerateError);

    std::mt19937_64 rng(1);
    for (int i = 0; i < 10; ++i) {
        auto big = branches_lambda(b1, 1e3 * test::random_unit(rng));
        for (const auto& l : big.roots) CHECK(std::abs(l) >= 50.0);
    }
    std::map<int, Block> bl;
    bl[-1] = {Scalar(2)};
    bl[1] = {Scalar(-1)};
    auto k1 = char_function(MatrixSymbol(1, bl));
    const cplx z(0.3, 0.7);
    CHECK(std::abs(branches_lambda(k1, z)[0] - (2.0 / z - z)) < 1e-14);
}

TEST_CASE("roots: collinear log-moduli do not merge starting points") {
    // (i, log|c_i|) collinear from i = 1 on: two hull edges of equal radius
    std::vector<cplx> c = {-4.0, 8.0, cplx(-1.5725667334219628, 0.90404690288857725), 2.0, -1.0};
    auto r = roots(c);
    CHECK(test::matching_distance(r.roots, test::companion_roots(c)) < 1e-10);
    CHECK_FALSE(r.clustered);
    std::mt19937_64 rng(17);
    std::uniform_int_distribution<int> deg(3, 8), split(1, 7);
    for (int t = 0; t < 300; ++t) {
        const int n = deg(rng);
        const int kink = std::min(split(rng), n - 1);
        std::vector<cplx> p(static_cast<std::size_t>(n + 1));
        for (int i = 0; i <= n; ++i) {
            // moduli 2^{-|i - kink|}: a tent, every coefficient on the hull
            p[static_cast<std::size_t>(i)] = std::ldexp(1.0, -std::abs(i - kink)) * test::random_unit(rng);
        }
        auto rr = roots(p);
        CAPTURE(t);
        CHECK(test::matching_distance(rr.roots, test::companion_roots(p)) < 1e-8);
    }
}

TEST_CASE("branches_lambda keeps huge branches near z = 0") {
    // g_0 ~ z^{-3} dwarfs the unit leading coefficient
    auto f = char_function(test::b3(47));
    for (double r : {1e-3, 1e-4}) {
        const cplx z = std::polar(r, 0.7);
        auto b = branches_lambda(f, z);
        REQUIRE(b.size() == 2);
        CHECK(b.at_infinity == 0);
        CHECK(test::matching_distance(b.roots, test::companion_roots(f.lambda_coeffs(z))) <= 1e-8 * std::abs(b[1]));
    }
}

TEST_CASE("root continuity in lambda") {
    auto b1 = char_function(stored("b1.json"));
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(-20.0, 20.0);
    for (int i = 0; i < 20; ++i) {
        const cplx lam(u(rng), u(rng));
        const cplx d = 1e-6 * test::random_unit(rng);
        auto a = sorted_roots_z(b1, lam);
        auto b = sorted_roots_z(b1, lam + d);
        CHECK(test::matching_distance(a.roots, b.roots) <= 1e-3);
    }
}
