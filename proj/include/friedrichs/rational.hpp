#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace friedrichs {

/// Arbitrary-precision rational used wherever endpoint coincidences matter.
using Rational = boost::multiprecision::cpp_rational;

/// Exact conversion: every finite double is a dyadic rational.
Rational rational_from_double(double value);

/// Parses "p/q", an integer, or a finite decimal literal such as "-0.125" or
/// "1e-3". Decimal literals are converted exactly (0.2 becomes 1/5).
Rational parse_rational(std::string_view text);

double to_double(const Rational& value);

/// "p/q", or "p" when the denominator is one.
std::string to_string(const Rational& value);

Rational pow(const Rational& base, unsigned exponent);

int sign(const Rational& value);

}  // namespace friedrichs
