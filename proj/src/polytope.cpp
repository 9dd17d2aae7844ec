#include "rbda/polytope.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rbda/double_description.hpp"
#include "rbda/error.hpp"

namespace rbda {

namespace {

constexpr double kDuplicateTolerance = 1e-9;

double linf(const WeightVector& a, const WeightVector& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

}  // namespace

WeightPolytope enumerate_vertices(const ConstraintSystem& cs) {
  const std::size_t n = cs.dimension;
  if (n < 2) throw Error(ErrorKind::invariant, "ConstraintSystem", "ConstraintSystem: at least 2 weights are required");
  for (const auto& row : cs.inequalities) {
    if (row.coefficients.size() != n) {
      throw Error(ErrorKind::invariant, "ConstraintSystem", "ConstraintSystem: row '" + row.label + "' has wrong length");
    }
  }

  // Free variables x = (k_1 .. k_{n-1}) with k_n = 1 - sum(x), homogenised as
  // y = (x0, x) with x0 >= 0. A row c.k >= 0 becomes
  //   c_n x0 + sum_i (c_i - c_n) x_i >= 0.
  const std::size_t d = n;
  dd::RationalMatrix rows;
  {
    dd::RationalVector x0(d, Rational(0));
    x0[0] = 1;
    rows.push_back(std::move(x0));
  }
  for (const auto& row : cs.inequalities) {
    const Rational sign = row.relation == Relation::at_least_zero ? Rational(1) : Rational(-1);
    const Rational& cn = row.coefficients[n - 1];
    dd::RationalVector h(d);
    h[0] = sign * cn;
    for (std::size_t i = 0; i + 1 < n; ++i) h[i + 1] = sign * (row.coefficients[i] - cn);
    rows.push_back(std::move(h));
  }
  if (cs.nonnegative) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      dd::RationalVector h(d, Rational(0));
      h[i + 1] = 1;
      rows.push_back(std::move(h));
    }
    dd::RationalVector last(d, Rational(-1));
    last[0] = 1;
    rows.push_back(std::move(last));
  }

  const auto rays = dd::extreme_rays(rows, d);

  std::vector<std::vector<Rational>> exact;
  bool recession = false;
  for (const auto& y : rays) {
    if (y[0].is_zero()) {
      recession = true;
      continue;
    }
    std::vector<Rational> k(n);
    Rational rest(1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
      k[i] = y[i + 1] / y[0];
      rest -= k[i];
    }
    k[n - 1] = rest;
    exact.push_back(std::move(k));
  }
  if (recession && !exact.empty()) {
    throw Error(ErrorKind::unbounded, "ConstraintSystem", "the weight constraints do not bound the feasible set");
  }

  std::sort(exact.begin(), exact.end());
  WeightPolytope out;
  out.constraints = cs;
  for (const auto& k : exact) {
    WeightVector v;
    v.reserve(n);
    for (const auto& c : k) v.push_back(to_double(c));
    if (!out.vertices.empty() && linf(out.vertices.back(), v) <= kDuplicateTolerance) continue;
    out.vertices.push_back(std::move(v));
  }
  return out;
}

SupportValue support_function(const WeightPolytope& p, std::span<const double> direction) {
  if (p.empty()) throw Error(ErrorKind::invariant, "WeightPolytope", "WeightPolytope: the polytope is empty");
  if (direction.size() != p.dimension()) {
    throw Error(ErrorKind::domain, "direction",
                "direction has length " + std::to_string(direction.size()) + ", expected " +
                    std::to_string(p.dimension()));
  }
  SupportValue out;
  for (std::size_t v = 0; v < p.vertices.size(); ++v) {
    double value = 0.0;
    for (std::size_t i = 0; i < direction.size(); ++i) value += direction[i] * p.vertices[v][i];
    if (v == 0 || value < out.min) {
      out.min = value;
      out.argmin = v;
    }
    if (v == 0 || value > out.max) {
      out.max = value;
      out.argmax = v;
    }
  }
  return out;
}

}  // namespace rbda
