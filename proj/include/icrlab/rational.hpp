#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace icrlab {

// Exact rational arithmetic. Every closed-form DoF value, CSIT state fraction
// and region coordinate in this project is a small rational and is compared
// exactly, never through floating point.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Lowest-terms "p/q"; plain "p" when the denominator is 1.
std::string to_string(const Rational& value);

// Accepts "p" or "p/q" with optional sign. Throws std::invalid_argument on
// malformed input or a zero denominator.
Rational parse_rational(const std::string& text);

double to_double(const Rational& value);

}  // namespace icrlab
