#pragma once

#include <algorithm>
#include <complex>
#include <map>
#include <utility>
#include <vector>

#include "bbtspec/laurent.hpp"

namespace bbt {

/// Sparse bivariate Laurent polynomial sum c_{a,b} u^a w^b. Used for
/// f(z, lambda) (u = z, w = lambda) and for g(x, y).
template <class T>
class Poly2 {
public:
    using Key = std::pair<int, int>;
    using Coeffs = std::map<Key, T>;

    Poly2() = default;
    explicit Poly2(Coeffs c) : c_(std::move(c)) {
        for (auto it = c_.begin(); it != c_.end();) {
            if (detail::is_zero(it->second)) it = c_.erase(it);
            else ++it;
        }
    }
    static Poly2 monomial(int a, int b, T v) {
        Poly2 p;
        p.add_term(a, b, std::move(v));
        return p;
    }
    static Poly2 constant(T v) { return monomial(0, 0, std::move(v)); }

    bool is_zero() const { return c_.empty(); }
    const Coeffs& coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }
    T coeff(int a, int b) const {
        auto it = c_.find({a, b});
        return it == c_.end() ? T(0) : it->second;
    }

    void add_term(int a, int b, const T& v) {
        if (detail::is_zero(v)) return;
        auto [it, inserted] = c_.emplace(Key{a, b}, v);
        if (!inserted) {
            it->second += v;
            if (detail::is_zero(it->second)) c_.erase(it);
        }
    }

    Poly2& operator+=(const Poly2& o) {
        for (const auto& [k, v] : o.c_) add_term(k.first, k.second, v);
        return *this;
    }
    Poly2& operator-=(const Poly2& o) {
        for (const auto& [k, v] : o.c_) add_term(k.first, k.second, T(-v));
        return *this;
    }
    friend Poly2 operator+(Poly2 a, const Poly2& b) { return a += b; }
    friend Poly2 operator-(Poly2 a, const Poly2& b) { return a -= b; }
    friend Poly2 operator*(const Poly2& a, const Poly2& b) {
        Poly2 out;
        for (const auto& [ka, va] : a.c_)
            for (const auto& [kb, vb] : b.c_)
                out.add_term(ka.first + kb.first, ka.second + kb.second, T(va * vb));
        return out;
    }
    Poly2 operator-() const {
        Poly2 out;
        for (const auto& [k, v] : c_) out.c_.emplace(k, T(-v));
        return out;
    }
    friend bool operator==(const Poly2& a, const Poly2& b) { return a.c_ == b.c_; }

    /// Coefficient of w^b as a Laurent polynomial in u.
    LaurentPoly<T> slice_second(int b) const {
        LaurentPoly<T> out;
        for (const auto& [k, v] : c_)
            if (k.second == b) out.add_term(k.first, v);
        return out;
    }
    /// Coefficient of u^a as a Laurent polynomial in w.
    LaurentPoly<T> slice_first(int a) const {
        LaurentPoly<T> out;
        for (const auto& [k, v] : c_)
            if (k.first == a) out.add_term(k.second, v);
        return out;
    }

    int min_first() const { return extreme([](const Key& k) { return k.first; }, true); }
    int max_first() const { return extreme([](const Key& k) { return k.first; }, false); }
    int min_second() const { return extreme([](const Key& k) { return k.second; }, true); }
    int max_second() const { return extreme([](const Key& k) { return k.second; }, false); }

    std::vector<Key> support() const {
        std::vector<Key> out;
        out.reserve(c_.size());
        for (const auto& [k, v] : c_) out.push_back(k);
        return out;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& [k, v] : c_) m = std::max(m, detail::magnitude(v));
        return m;
    }

    cplx eval(cplx u, cplx w) const {
        cplx acc{0.0, 0.0};
        for (const auto& [k, v] : c_) acc += detail::as_complex(v) * std::pow(u, k.first) * std::pow(w, k.second);
        return acc;
    }

    template <class U, class F>
    Poly2<U> map(F&& f) const {
        typename Poly2<U>::Coeffs out;
        for (const auto& [k, v] : c_) out.emplace(k, f(v));
        return Poly2<U>(std::move(out));
    }

private:
    template <class Proj>
    int extreme(Proj proj, bool want_min) const {
        if (c_.empty()) throw DegenerateError("exponent range of the zero polynomial");
        int best = proj(c_.begin()->first);
        for (const auto& [k, v] : c_) best = want_min ? std::min(best, proj(k)) : std::max(best, proj(k));
        return best;
    }
    Coeffs c_;
};

}  // namespace bbt
