#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace nmqc {

// Exact rational arithmetic. All distribution weights, Bell-functional
// coefficients and classical bounds are kept as arbitrary-precision
// fractions; floating point enters only with quantum expectation values.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "3/16", "-1/8" or a plain integer like "2". Throws
// std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(const std::string& text);

// "3/16" for proper fractions, "2" when the denominator is 1.
std::string fraction_string(const Rational& value);

double to_double(const Rational& value);

}  // namespace nmqc
