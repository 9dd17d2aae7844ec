#ifndef RBDA_RATIONAL_HPP
#define RBDA_RATIONAL_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace rbda {

using Rational = boost::multiprecision::cpp_rational;

/// Recovers the short fraction a decimal literal was meant to be (0.4 -> 2/5)
/// by continued-fraction expansion; falls back to the exact binary value of
/// the double when no fraction with denominator <= 10^9 is within 1e-15
/// relative distance.
Rational to_rational(double value);

double to_double(const Rational& value);
std::string to_string(const Rational& value);

}  // namespace rbda

#endif  // RBDA_RATIONAL_HPP
