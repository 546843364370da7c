#include "bbtspec/charfun.hpp"

#include <cmath>

#include "bbtspec/determinant.hpp"
#include "bbtspec/errors.hpp"

namespace bbt {

namespace {

Poly2<double> to_double(const Poly2<Rational>& f) {
    return f.map<double>([](const Rational& q) { return q.get_d(); });
}

Poly2<double> trim(const Poly2<double>& f, double rel_tol = 1e-12) {
    const double cut = rel_tol * f.max_abs_coeff();
    Poly2<double>::Coeffs out;
    for (const auto& [key, v] : f.coeffs())
        if (std::abs(v) > cut) out.emplace(key, v);
    return Poly2<double>(std::move(out));
}

CharFunction build_views(int k, Poly2<double> f) {
    if (f.is_zero()) throw DegenerateError("characteristic function is identically zero");
    CharFunction cf;
    cf.k = k;
    cf.p = -f.min_first();
    cf.q = f.max_first();
    cf.scale = f.max_abs_coeff();
    cf.g.reserve(static_cast<std::size_t>(k + 1));
    for (int l = 0; l <= k; ++l) cf.g.push_back(f.slice_second(l));
    for (int m = -cf.p; m <= cf.q; ++m) cf.fm.push_back(f.slice_first(m));
    cf.coeffs = std::move(f);
    return cf;
}

template <class T>
Poly2<T> expand_det(const MatrixSymbol& sym, const T& one, auto&& entry_poly) {
    const int k = sym.k();
    std::vector<Poly2<T>> m;
    m.reserve(static_cast<std::size_t>(k * k));
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            Poly2<T> e;
            const auto ep = entry_poly(i, j);
            for (const auto& [exp, v] : ep.coeffs()) e.add_term(exp, 0, v);
            if (i == j) e.add_term(0, 1, T(-one));
            m.push_back(std::move(e));
        }
    }
    return subset_determinant(m, k, Poly2<T>(), Poly2<T>::constant(one));
}

}  // namespace

cplx CharFunction::eval(cplx z, cplx lambda) const {
    cplx acc{0.0, 0.0};
    for (int l = k; l >= 0; --l) acc = acc * lambda + g[static_cast<std::size_t>(l)].eval(z);
    return acc;
}

std::vector<cplx> CharFunction::z_coeffs(cplx lambda) const {
    std::vector<cplx> out(fm.size());
    for (std::size_t i = 0; i < fm.size(); ++i) out[i] = fm[i].eval(lambda);
    return out;
}

std::vector<cplx> CharFunction::lambda_coeffs(cplx z) const {
    std::vector<cplx> out(g.size());
    for (std::size_t l = 0; l < g.size(); ++l) out[l] = g[l].eval(z);
    return out;
}

CharFunction make_char_function(int k, const Poly2<Rational>& f) {
    CharFunction cf = build_views(k, to_double(f));
    cf.exact = f;
    return cf;
}

CharFunction make_char_function(int k, Poly2<double> f) { return build_views(k, trim(f)); }

CharFunction char_function(const MatrixSymbol& sym) {
    if (sym.exact()) {
        auto f = expand_det<Rational>(sym, Rational(1), [&](int i, int j) { return sym.entry_poly_exact(i, j); });
        return make_char_function(sym.k(), f);
    }
    auto f = expand_det<double>(sym, 1.0, [&](int i, int j) { return sym.entry_poly(i, j); });
    return make_char_function(sym.k(), std::move(f));
}

std::pair<int, int> coeff_ord_deg(const CharFunction& f, int l) {
    if (l < 0 || l > f.k) throw std::out_of_range("coefficient index outside 0..k");
    const auto& gl = f.g[static_cast<std::size_t>(l)];
    if (gl.is_zero()) throw DegenerateError("g_" + std::to_string(l) + " is the zero polynomial");
    return {gl.ord(), gl.deg()};
}

std::pair<int, int> generic_ord_deg(int k, int p, int q, int l) {
    const int num_lo = -p * (k - l);
    const int num_hi = q * (k - l);
    // k > 0; ceil and floor of exact integer ratios
    const int lo = num_lo >= 0 ? (num_lo + k - 1) / k : -((-num_lo) / k);
    const int hi = num_hi >= 0 ? num_hi / k : -((-num_hi + k - 1) / k);
    return {lo, hi};
}

bool is_generic(const CharFunction& f, int l) {
    const auto& gl = f.g[static_cast<std::size_t>(l)];
    if (gl.is_zero()) return false;
    return coeff_ord_deg(f, l) == generic_ord_deg(f.k, f.p, f.q, l);
}

bool is_generic(const CharFunction& f) {
    for (int l = 0; l <= f.k; ++l)
        if (!is_generic(f, l)) return false;
    return true;
}

}  // namespace bbt
