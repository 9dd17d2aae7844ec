#include "rbda/double_description.hpp"

#include <algorithm>
#include <string>

#include <boost/dynamic_bitset.hpp>

#include "rbda/error.hpp"

namespace rbda::dd {

namespace {

using ZeroSet = boost::dynamic_bitset<>;

struct Ray {
  RationalVector y;
  ZeroSet zeros;  // processed rows on which the ray is tight
};

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i].is_zero() && !b[i].is_zero()) s += a[i] * b[i];
  }
  return s;
}

void normalize(RationalVector& y) {
  Rational scale(0);
  for (const auto& v : y) scale = std::max(scale, Rational(abs(v)));
  if (scale.is_zero()) return;
  for (auto& v : y) v /= scale;
}

// Indices of a maximal set of linearly independent rows, greedily in order.
std::vector<std::size_t> independent_rows(const RationalMatrix& rows, std::size_t d) {
  std::vector<std::size_t> chosen;
  RationalMatrix basis;  // row-echelon form of the chosen rows
  std::vector<std::size_t> pivots;
  for (std::size_t r = 0; r < rows.size() && chosen.size() < d; ++r) {
    RationalVector v = rows[r];
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::size_t p = pivots[b];
      if (!v[p].is_zero()) {
        const Rational f = v[p] / basis[b][p];
        for (std::size_t c = 0; c < d; ++c) v[c] -= f * basis[b][c];
      }
    }
    auto nz = std::find_if(v.begin(), v.end(), [](const Rational& x) { return !x.is_zero(); });
    if (nz == v.end()) continue;
    pivots.push_back(static_cast<std::size_t>(nz - v.begin()));
    basis.push_back(std::move(v));
    chosen.push_back(r);
  }
  return chosen;
}

RationalMatrix inverse(RationalMatrix m) {
  const std::size_t d = m.size();
  RationalMatrix inv(d, RationalVector(d, Rational(0)));
  for (std::size_t i = 0; i < d; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < d; ++col) {
    std::size_t piv = col;
    while (piv < d && m[piv][col].is_zero()) ++piv;
    if (piv == d) throw Error(ErrorKind::numerical, "double_description", "singular initial basis");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = m[col][col];
    for (std::size_t c = 0; c < d; ++c) {
      m[col][c] /= p;
      inv[col][c] /= p;
    }
    for (std::size_t r = 0; r < d; ++r) {
      if (r == col || m[r][col].is_zero()) continue;
      const Rational f = m[r][col];
      for (std::size_t c = 0; c < d; ++c) {
        m[r][c] -= f * m[col][c];
        inv[r][c] -= f * inv[col][c];
      }
    }
  }
  return inv;
}

bool adjacent(const std::vector<Ray>& rays, std::size_t a, std::size_t b, std::size_t d) {
  ZeroSet common = rays[a].zeros & rays[b].zeros;
  if (d >= 2 && common.count() + 2 < d) return false;
  for (std::size_t r = 0; r < rays.size(); ++r) {
    if (r == a || r == b) continue;
    if (common.is_subset_of(rays[r].zeros)) return false;
  }
  return true;
}

}  // namespace

std::vector<RationalVector> extreme_rays(const RationalMatrix& rows, std::size_t d) {
  for (const auto& row : rows) {
    if (row.size() != d) throw Error(ErrorKind::numerical, "double_description", "row length mismatch");
  }
  const std::vector<std::size_t> initial = independent_rows(rows, d);
  if (initial.size() < d) {
    throw Error(ErrorKind::unbounded, "double_description",
                "constraints have rank " + std::to_string(initial.size()) + " < " + std::to_string(d) +
                    "; the feasible set contains a line");
  }

  // Initial cone {y : B y >= 0} is generated by the columns of B^-1.
  RationalMatrix basis;
  for (std::size_t r : initial) basis.push_back(rows[r]);
  const RationalMatrix inv = inverse(basis);
  std::vector<Ray> rays;
  for (std::size_t j = 0; j < d; ++j) {
    Ray ray;
    ray.y.resize(d);
    for (std::size_t i = 0; i < d; ++i) ray.y[i] = inv[i][j];
    normalize(ray.y);
    ray.zeros = ZeroSet(rows.size());
    for (std::size_t i = 0; i < d; ++i) {
      if (i != j) ray.zeros.set(initial[i]);
    }
    rays.push_back(std::move(ray));
  }

  std::vector<bool> used(rows.size(), false);
  for (std::size_t r : initial) used[r] = true;

  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (used[r]) continue;
    const RationalVector& a = rows[r];
    std::vector<Rational> value(rays.size());
    std::vector<std::size_t> pos, neg;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      value[i] = dot(a, rays[i].y);
      if (value[i] > 0) {
        pos.push_back(i);
      } else if (value[i] < 0) {
        neg.push_back(i);
      }
    }
    if (neg.empty()) {
      for (std::size_t i = 0; i < rays.size(); ++i) {
        if (value[i].is_zero()) rays[i].zeros.set(r);
      }
      continue;
    }

    std::vector<Ray> next;
    for (std::size_t p : pos) {
      for (std::size_t n : neg) {
        if (!adjacent(rays, p, n, d)) continue;
        Ray ray;
        ray.y.resize(d);
        const Rational cp = value[p];
        const Rational cn = -value[n];
        for (std::size_t c = 0; c < d; ++c) ray.y[c] = cp * rays[n].y[c] + cn * rays[p].y[c];
        normalize(ray.y);
        ray.zeros = rays[p].zeros & rays[n].zeros;
        ray.zeros.set(r);
        next.push_back(std::move(ray));
      }
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (value[i] < 0) continue;
      if (value[i].is_zero()) rays[i].zeros.set(r);
      next.push_back(std::move(rays[i]));
    }
    rays = std::move(next);
    if (rays.empty()) break;
  }

  std::vector<RationalVector> out;
  out.reserve(rays.size());
  for (auto& ray : rays) out.push_back(std::move(ray.y));
  return out;
}

}  // namespace rbda::dd
