#include "rbda/rational.hpp"

#include <cmath>
#include <cstdint>

#include "rbda/error.hpp"

namespace rbda {

namespace {

using boost::multiprecision::cpp_int;

Rational exact_binary(double value) {
  int exponent = 0;
  const double mantissa = std::frexp(value, &exponent);
  // mantissa * 2^53 is an integer for every finite double
  const auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Rational out(scaled);
  if (exponent >= 0) {
    out *= Rational(cpp_int(1) << exponent);
  } else {
    out /= Rational(cpp_int(1) << -exponent);
  }
  return out;
}

}  // namespace

Rational to_rational(double value) {
  if (!std::isfinite(value)) throw Error(ErrorKind::numerical, "rational", "cannot convert non-finite value");
  if (value == 0.0) return Rational(0);
  if (value == std::floor(value) && std::fabs(value) < 9.0e15) {
    return Rational(static_cast<std::int64_t>(value));
  }

  const double target = std::fabs(value);
  const double tolerance = 1e-15 * std::max(1.0, target);
  // Convergents h/k of the continued fraction of target.
  std::int64_t h_prev = 1, h = 0, k_prev = 0, k = 1;
  double x = target;
  for (int iter = 0; iter < 64; ++iter) {
    const double a_real = std::floor(x);
    if (a_real > 1e12) break;
    const auto a = static_cast<std::int64_t>(a_real);
    const std::int64_t h_next = a * h_prev + h;
    const std::int64_t k_next = a * k_prev + k;
    if (k_next > 1'000'000'000) break;
    h = h_prev;
    k = k_prev;
    h_prev = h_next;
    k_prev = k_next;
    const double approx = static_cast<double>(h_prev) / static_cast<double>(k_prev);
    if (std::fabs(approx - target) <= tolerance) {
      Rational out(h_prev, k_prev);
      return value < 0 ? Rational(-out) : out;
    }
    const double frac = x - a_real;
    if (frac <= 0.0) break;
    x = 1.0 / frac;
  }
  return exact_binary(value);
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string to_string(const Rational& value) { return value.str(); }

}  // namespace rbda
