#pragma once

#include <string>
#include <variant>

#include "bbtspec/rational.hpp"

namespace bbt {

/// A matrix entry: either an exact rational or a double. Arithmetic between
/// the two modes is rejected; convert explicitly with to_float().
class Scalar {
public:
    enum class Mode { Exact, Float };

    Scalar() : value_(Rational(0)) {}
    Scalar(long v) : value_(Rational(v)) {}  // NOLINT(google-explicit-constructor)
    Scalar(int v) : Scalar(static_cast<long>(v)) {}
    explicit Scalar(Rational q) : value_(std::move(q)) { std::get<Rational>(value_).canonicalize(); }
    explicit Scalar(double d) : value_(d) {}

    Mode mode() const { return std::holds_alternative<Rational>(value_) ? Mode::Exact : Mode::Float; }
    bool exact() const { return mode() == Mode::Exact; }
    bool is_zero() const;

    const Rational& rational() const;  // throws std::logic_error in float mode
    double to_double() const;
    Scalar to_float() const { return Scalar(to_double()); }

    Scalar& operator+=(const Scalar& o);
    Scalar& operator-=(const Scalar& o);
    Scalar& operator*=(const Scalar& o);
    Scalar& operator/=(const Scalar& o);
    Scalar operator-() const;

    friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
    friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
    friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
    friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
    friend bool operator==(const Scalar& a, const Scalar& b);

    std::string str() const;

private:
    void require_same_mode(const Scalar& o) const;
    std::variant<Rational, double> value_;
};

}  // namespace bbt
