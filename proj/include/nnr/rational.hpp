#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace nnr {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Parses "3", "-0.25", "1e-3", "1.5E2" and "p/q" forms into an exact rational.
// Every finite decimal is exactly representable, so text input never rounds.
Rational parse_rational(const std::string& text);
std::optional<Rational> try_parse_rational(const std::string& text);

// Exact decimal expansion when the reduced denominator is 2^a * 5^b,
// otherwise 17 significant digits of the nearest double.
std::string format_rational(const Rational& v);

// Nearest double, safe for components far beyond double range.
double to_double(const Rational& v);

// Exact binary value of a finite double.
Rational rational_from_double(double x);

}  // namespace nnr
