#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ncineq {

// Exact arithmetic carriers used throughout the derivation path.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "p/q" or a bare integer "p". The numerator may carry a sign, the
// denominator must be a positive integer. Throws ParseError otherwise.
Rat parse_fraction(std::string_view text);

// Canonical textual form: reduced, denominator omitted when it is 1.
// parse_fraction(format_fraction(x)) == x for every x.
std::string format_fraction(const Rat& value);

inline double to_double(const Rat& value) { return value.convert_to<double>(); }

}  // namespace ncineq
