#pragma once

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace configset {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Lowest terms, positive denominator, always "p/q" (so 1 is "1/1").
std::string format_rational(const Rational& value);

/// Accepts "p/q" or a bare integer. Throws configset::Error on malformed input.
Rational parse_rational(const std::string& text);

std::string format_integer(const Integer& value);

}  // namespace configset
