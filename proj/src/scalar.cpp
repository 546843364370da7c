#include "bbtspec/scalar.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "bbtspec/errors.hpp"

namespace bbt {

Rational parse_rational(std::string_view text) {
    std::string s(text);
    auto trim = [](std::string& t) {
        const auto b = t.find_first_not_of(" \t");
        const auto e = t.find_last_not_of(" \t");
        t = (b == std::string::npos) ? std::string() : t.substr(b, e - b + 1);
    };
    trim(s);
    if (s.empty()) throw InputError("empty number");

    if (const auto slash = s.find('/'); slash != std::string::npos) {
        Rational num = parse_rational(s.substr(0, slash));
        Rational den = parse_rational(s.substr(slash + 1));
        if (den == 0) throw InputError("zero denominator in '" + s + "'");
        Rational q = num / den;
        q.canonicalize();
        return q;
    }

    std::size_t pos = 0;
    bool negative = false;
    if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
    std::string digits;
    long scale = 0;  // value = digits * 10^scale
    bool seen_point = false;
    bool any_digit = false;
    for (; pos < s.size(); ++pos) {
        const char c = s[pos];
        if (c >= '0' && c <= '9') {
            digits.push_back(c);
            any_digit = true;
            if (seen_point) --scale;
        } else if (c == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw InputError("not a number: '" + s + "'");
    if (pos < s.size()) {
        if (s[pos] != 'e' && s[pos] != 'E') throw InputError("not a number: '" + s + "'");
        ++pos;
        std::size_t used = 0;
        long exponent = 0;
        try {
            exponent = std::stol(s.substr(pos), &used);
        } catch (const std::exception&) {
            throw InputError("bad exponent in '" + s + "'");
        }
        if (pos + used != s.size()) throw InputError("not a number: '" + s + "'");
        if (exponent > 4000 || exponent < -4000) throw InputError("exponent out of range in '" + s + "'");
        scale += exponent;
    }
    Integer mag(digits);
    Integer pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
    Rational q = scale >= 0 ? Rational(mag * pow10) : Rational(mag, pow10);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

bool Scalar::is_zero() const {
    if (exact()) return std::get<Rational>(value_) == 0;
    return std::get<double>(value_) == 0.0;
}

const Rational& Scalar::rational() const {
    if (!exact()) throw std::logic_error("Scalar::rational() on a float-mode value");
    return std::get<Rational>(value_);
}

double Scalar::to_double() const {
    if (exact()) return std::get<Rational>(value_).get_d();
    return std::get<double>(value_);
}

void Scalar::require_same_mode(const Scalar& o) const {
    if (mode() != o.mode()) throw std::domain_error("mixed exact/float Scalar arithmetic");
}

Scalar& Scalar::operator+=(const Scalar& o) {
    require_same_mode(o);
    if (exact()) std::get<Rational>(value_) += std::get<Rational>(o.value_);
    else std::get<double>(value_) += std::get<double>(o.value_);
    return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
    require_same_mode(o);
    if (exact()) std::get<Rational>(value_) -= std::get<Rational>(o.value_);
    else std::get<double>(value_) -= std::get<double>(o.value_);
    return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
    require_same_mode(o);
    if (exact()) std::get<Rational>(value_) *= std::get<Rational>(o.value_);
    else std::get<double>(value_) *= std::get<double>(o.value_);
    return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
    require_same_mode(o);
    if (o.is_zero()) throw std::domain_error("Scalar division by zero");
    if (exact()) std::get<Rational>(value_) /= std::get<Rational>(o.value_);
    else std::get<double>(value_) /= std::get<double>(o.value_);
    return *this;
}

Scalar Scalar::operator-() const {
    if (exact()) return Scalar(Rational(-std::get<Rational>(value_)));
    return Scalar(-std::get<double>(value_));
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (a.mode() != b.mode()) return false;
    if (a.exact()) return std::get<Rational>(a.value_) == std::get<Rational>(b.value_);
    return std::get<double>(a.value_) == std::get<double>(b.value_);
}

std::string Scalar::str() const {
    if (exact()) return std::get<Rational>(value_).get_str();
    std::ostringstream os;
    os.precision(17);
    os << std::get<double>(value_);
    return os.str();
}

}  // namespace bbt
