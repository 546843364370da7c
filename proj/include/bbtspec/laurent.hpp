#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <utility>

#include "bbtspec/errors.hpp"
#include "bbtspec/rational.hpp"

namespace bbt {

using cplx = std::complex<double>;

namespace detail {

inline bool is_zero(const Rational& q) { return q == 0; }
inline bool is_zero(double d) { return d == 0.0; }
inline bool is_zero(const cplx& c) { return c == cplx(0.0, 0.0); }

inline cplx as_complex(const Rational& q) { return {q.get_d(), 0.0}; }
inline cplx as_complex(double d) { return {d, 0.0}; }
inline cplx as_complex(const cplx& c) { return c; }

inline double magnitude(const Rational& q) { return std::abs(q.get_d()); }
inline double magnitude(double d) { return std::abs(d); }
inline double magnitude(const cplx& c) { return std::abs(c); }

}  // namespace detail

/// Laurent polynomial sum_m c_m z^m with finitely many nonzero terms. Zero
/// coefficients are never stored, so ord/deg are read off the map ends.
template <class T>
class LaurentPoly {
public:
    using Coeffs = std::map<int, T>;

    LaurentPoly() = default;
    explicit LaurentPoly(Coeffs c) : c_(std::move(c)) { normalize(); }
    static LaurentPoly constant(T v) { return monomial(0, std::move(v)); }
    static LaurentPoly monomial(int exponent, T v) {
        LaurentPoly p;
        if (!detail::is_zero(v)) p.c_.emplace(exponent, std::move(v));
        return p;
    }

    bool is_zero() const { return c_.empty(); }
    int ord() const {
        if (c_.empty()) throw DegenerateError("ord() of the zero Laurent polynomial");
        return c_.begin()->first;
    }
    int deg() const {
        if (c_.empty()) throw DegenerateError("deg() of the zero Laurent polynomial");
        return c_.rbegin()->first;
    }
    T coeff(int m) const {
        auto it = c_.find(m);
        return it == c_.end() ? T(0) : it->second;
    }
    const Coeffs& coeffs() const { return c_; }

    void add_term(int m, const T& v) {
        if (detail::is_zero(v)) return;
        auto [it, inserted] = c_.emplace(m, v);
        if (!inserted) {
            it->second += v;
            if (detail::is_zero(it->second)) c_.erase(it);
        }
    }

    LaurentPoly& operator+=(const LaurentPoly& o) {
        for (const auto& [m, v] : o.c_) add_term(m, v);
        return *this;
    }
    LaurentPoly& operator-=(const LaurentPoly& o) {
        for (const auto& [m, v] : o.c_) add_term(m, T(-v));
        return *this;
    }
    friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
    friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
    friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
        LaurentPoly out;
        for (const auto& [ma, va] : a.c_)
            for (const auto& [mb, vb] : b.c_) out.add_term(ma + mb, T(va * vb));
        return out;
    }
    LaurentPoly operator-() const {
        LaurentPoly out;
        for (const auto& [m, v] : c_) out.c_.emplace(m, T(-v));
        return out;
    }
    friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }

    /// Horner evaluation; z must be nonzero when ord() < 0.
    cplx eval(cplx z) const {
        if (c_.empty()) return {0.0, 0.0};
        const int lo = ord();
        const int hi = deg();
        cplx acc{0.0, 0.0};
        auto it = c_.rbegin();
        for (int m = hi; m >= lo; --m) {
            acc *= z;
            if (it != c_.rend() && it->first == m) {
                acc += detail::as_complex(it->second);
                ++it;
            }
        }
        if (lo != 0) acc *= std::pow(z, lo);
        return acc;
    }

    double max_abs_coeff() const {
        double m = 0.0;
        for (const auto& [e, v] : c_) m = std::max(m, detail::magnitude(v));
        return m;
    }

    template <class U, class F>
    LaurentPoly<U> map(F&& f) const {
        typename LaurentPoly<U>::Coeffs out;
        for (const auto& [m, v] : c_) out.emplace(m, f(v));
        return LaurentPoly<U>(std::move(out));
    }

private:
    void normalize() {
        for (auto it = c_.begin(); it != c_.end();) {
            if (detail::is_zero(it->second)) it = c_.erase(it);
            else ++it;
        }
    }
    Coeffs c_;
};

/// Drops coefficients with |c| <= rel_tol * max|c| (float-mode support detection).
inline LaurentPoly<double> trimmed(const LaurentPoly<double>& p, double rel_tol = 1e-12) {
    const double cut = rel_tol * p.max_abs_coeff();
    LaurentPoly<double>::Coeffs out;
    for (const auto& [m, v] : p.coeffs())
        if (std::abs(v) > cut) out.emplace(m, v);
    return LaurentPoly<double>(std::move(out));
}

}  // namespace bbt
