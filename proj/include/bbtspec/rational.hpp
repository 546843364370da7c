#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace bbt {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "7", "-3/4", "2.5", "1e-3" exactly. Throws InputError.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& q);

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace bbt
