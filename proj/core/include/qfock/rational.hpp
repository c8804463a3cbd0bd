#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "qfock/error.hpp"

namespace qfock {

/// Arbitrary-precision integers and rationals. cpp_rational keeps the
/// canonical form we require: lowest terms, denominator > 0.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// q0^k for integer k of either sign; q0 must be nonzero for k < 0.
Rational rat_pow(const Rational& base, long long exp);

/// Parses "a", "a/b" or a plain decimal like "0.7" (read exactly as 7/10).
/// Rejects b = 0 and empty input.
Rational parse_rational(const std::string& text);

/// Canonical form: "a" when the denominator is 1, else "a/b".
std::string to_string(const Rational& value);

bool is_integer(const Rational& value);

/// Conversion helper for numeric mode.
double to_double(const Rational& value);

} // namespace qfock
