#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace randsol {

// All predicate-level arithmetic in this project is exact: arbitrary
// precision integers for elimination, normalized rationals everywhere else.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// "3/2" for non-integers, plain "2" for integers.
std::string rat_to_string(const Rat& q);

// Accepts "3/2", "-2", "0.75" and scientific-free decimal strings.
Rat parse_rational(const std::string& text);

// Exact value of the IEEE double (doubles are binary rationals).
Rat rat_from_double(double x);

Rat rat_pow(const Rat& base, long long exponent);

Int lcm_int(const Int& a, const Int& b);

}  // namespace randsol
