#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace envalg {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "p/q", "-p/q", "+p" or an integer. Throws std::invalid_argument.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& value);

inline bool is_zero(const Rational& value) { return sgn(value) == 0; }

}  // namespace envalg
