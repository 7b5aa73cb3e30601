#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>

#include "coordgames/errors.hpp"

namespace coord {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Float50 = boost::multiprecision::cpp_bin_float_50;

// "8/3" for non-integers, "2" for integers.
std::string rational_to_string(const Rational& q);

// Accepts "n", "-n", "n/d" with optional sign on the numerator.
Rational rational_from_string(std::string_view s);

// Round-half-away decimal expansion with the given number of fraction digits.
std::string rational_to_decimal(const Rational& q, int digits);

double rational_to_double(const Rational& q);

}  // namespace coord
