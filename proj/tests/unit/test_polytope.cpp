#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "rbda/double_description.hpp"
#include "rbda/elicitation.hpp"
#include "rbda/error.hpp"
#include "rbda/polytope.hpp"

using namespace rbda;

namespace {

ConstraintSystem fixture_system() {
  const ElicitationSession s = load_session(oracle::data_file("marmorkrebs-session.json"));
  return build_constraints(build_rewards(s.pairs, *s.worst_choice), s.statements);
}

ConstraintRow row(std::vector<Rational> c, Relation rel = Relation::at_least_zero) {
  return {std::move(c), rel, "row"};
}

std::vector<double> random_direction(std::mt19937_64& gen, std::size_t n) {
  std::normal_distribution<double> g;
  std::vector<double> d(n);
  for (double& v : d) v = g(gen);
  return d;
}

}  // namespace

TEST_CASE("bare simplex") {
  ConstraintSystem cs;
  cs.dimension = 3;
  const WeightPolytope p = enumerate_vertices(cs);
  REQUIRE(p.vertices.size() == 3);
  CHECK(p.vertices[0] == WeightVector{0, 0, 1});
  CHECK(p.vertices[1] == WeightVector{0, 1, 0});
  CHECK(p.vertices[2] == WeightVector{1, 0, 0});
}

TEST_CASE("ranked weights") {
  ConstraintSystem cs;
  cs.dimension = 3;
  cs.inequalities = {row({1, -1, 0}), row({0, 1, -1})};
  const WeightPolytope p = enumerate_vertices(cs);
  REQUIRE(p.vertices.size() == 3);
  const std::vector<WeightVector> want{{1.0 / 3, 1.0 / 3, 1.0 / 3}, {0.5, 0.5, 0}, {1, 0, 0}};
  CHECK(oracle::bottleneck_match(p.vertices, want) < 1e-15);
}

TEST_CASE("fixture polytope") {
  const WeightPolytope p = enumerate_vertices(fixture_system());
  REQUIRE(p.vertices.size() == 8);
  const std::vector<double> e1{1, 0, 0, 0};
  const SupportValue sv = support_function(p, e1);
  CHECK(sv.max == doctest::Approx(15.0 / 38.0).epsilon(1e-12));
  CHECK(std::fabs(sv.max - 0.39) < 0.01);
  CHECK(sv.min == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(p.vertices[sv.argmax][0] == sv.max);
  for (const auto& v : p.vertices) {
    double sum = 0.0;
    for (double x : v) sum += x;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(p.constraints.satisfied(v, 1e-12));
  }
  CHECK(oracle::bottleneck_match(p.vertices, oracle::brute_force_vertices(p.constraints)) < 1e-9);
}

TEST_CASE("zero direction and wrong lengths") {
  const WeightPolytope p = enumerate_vertices(fixture_system());
  const SupportValue z = support_function(p, std::vector<double>(4, 0.0));
  CHECK(z.min == 0.0);
  CHECK(z.max == 0.0);
  CHECK_THROWS_AS(support_function(p, std::vector<double>(3, 1.0)), Error);
}

TEST_CASE("support function matches linear programming") {
  const ConstraintSystem cs = fixture_system();
  const WeightPolytope p = enumerate_vertices(cs);
  std::mt19937_64 gen(1);
  for (int i = 0; i < 200; ++i) {
    const auto d = random_direction(gen, 4);
    const SupportValue sv = support_function(p, d);
    const oracle::LpSupport lp = oracle::lp_support(cs, d);
    REQUIRE(lp.feasible);
    CHECK(std::fabs(sv.max - lp.max) < 1e-9);
    CHECK(std::fabs(sv.min - lp.min) < 1e-9);
  }
}

TEST_CASE("vertices and constraints describe the same set") {
  const ConstraintSystem cs = fixture_system();
  const WeightPolytope p = enumerate_vertices(cs);
  std::vector<double> centre(4, 0.0);
  for (const auto& v : p.vertices) {
    for (std::size_t c = 0; c < 4; ++c) centre[c] += v[c] / static_cast<double>(p.vertices.size());
  }
  // Points scattered around the centroid on the plane sum(k) = 1: those
  // satisfying the rows must lie in the hull of the vertices and vice versa.
  std::mt19937_64 gen(2);
  std::uniform_real_distribution<double> radius(0.0, 0.1);
  int inside = 0, outside = 0;
  for (int i = 0; i < 1000; ++i) {
    auto d = random_direction(gen, 4);
    double mean = 0.0;
    for (double v : d) mean += v / 4.0;
    double norm = 0.0;
    for (double& v : d) norm = std::max(norm, std::fabs(v -= mean));
    const double r = radius(gen);
    std::vector<double> k(4);
    for (std::size_t c = 0; c < 4; ++c) k[c] = centre[c] + r * d[c] / norm;
    double slack = std::numeric_limits<double>::infinity();
    for (const auto& row : cs.inequalities) slack = std::min(slack, row.slack(k));
    for (double v : k) slack = std::min(slack, v);
    if (std::fabs(slack) < 1e-9) continue;
    CHECK(oracle::in_hull(p.vertices, k) == (slack > 0.0));
    (slack > 0.0 ? inside : outside) += 1;
  }
  CHECK(inside > 50);
  CHECK(outside > 50);
  // Random convex combinations of vertices satisfy every row.
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    std::vector<double> lambda(p.vertices.size());
    double s = 0.0;
    for (double& v : lambda) s += (v = u(gen));
    std::vector<double> k(4, 0.0);
    for (std::size_t j = 0; j < lambda.size(); ++j) {
      for (std::size_t c = 0; c < 4; ++c) k[c] += lambda[j] / s * p.vertices[j][c];
    }
    CHECK(cs.satisfied(k, 1e-12));
  }
}

TEST_CASE("no vertex is a combination of the others") {
  std::mt19937_64 gen(3);
  std::vector<ConstraintSystem> systems{fixture_system()};
  for (int i = 0; i < 20; ++i) systems.push_back(oracle::random_system(gen, 4, 6));
  for (const auto& cs : systems) {
    const WeightPolytope p = enumerate_vertices(cs);
    for (std::size_t v = 0; v < p.vertices.size(); ++v) {
      auto others = p.vertices;
      others.erase(others.begin() + static_cast<std::ptrdiff_t>(v));
      CHECK_FALSE(oracle::in_hull(others, p.vertices[v]));
    }
  }
}

TEST_CASE("output is a function of the constraint set") {
  const ConstraintSystem cs = fixture_system();
  const WeightPolytope a = enumerate_vertices(cs);
  CHECK(enumerate_vertices(cs).vertices == a.vertices);
  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 10; ++trial) {
    ConstraintSystem shuffled = cs;
    std::shuffle(shuffled.inequalities.begin(), shuffled.inequalities.end(), gen);
    CHECK(enumerate_vertices(shuffled).vertices == a.vertices);
  }
  // A redundant duplicate row changes nothing.
  ConstraintSystem dup = cs;
  dup.inequalities.push_back(cs.inequalities[0]);
  CHECK(enumerate_vertices(dup).vertices == a.vertices);
}

TEST_CASE("brute-force agreement on random systems") {
  std::mt19937_64 gen(5);
  std::uniform_int_distribution<int> dim(2, 4), rows(1, 10);
  int nonempty = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const ConstraintSystem cs = oracle::random_system(gen, static_cast<std::size_t>(dim(gen)),
                                                      static_cast<std::size_t>(rows(gen)));
    const WeightPolytope p = enumerate_vertices(cs);
    const auto brute = oracle::brute_force_vertices(cs);
    REQUIRE(p.vertices.size() == brute.size());
    CHECK(oracle::bottleneck_match(p.vertices, brute) < 1e-9);
    nonempty += !p.empty();
  }
  CHECK(nonempty > 30);
}

TEST_CASE("randomly oriented rows, including empty sets") {
  std::mt19937_64 gen(6);
  std::uniform_int_distribution<int> dim(2, 4), rows(1, 8);
  int empty = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const ConstraintSystem cs = oracle::random_system(gen, static_cast<std::size_t>(dim(gen)),
                                                      static_cast<std::size_t>(rows(gen)), false);
    const WeightPolytope p = enumerate_vertices(cs);
    const auto brute = oracle::brute_force_vertices(cs);
    REQUIRE(p.vertices.size() == brute.size());
    CHECK(oracle::bottleneck_match(p.vertices, brute) < 1e-9);
    CHECK(p.empty() == !oracle::lp_support(cs, std::vector<double>(cs.dimension, 0.0)).feasible);
    empty += p.empty();
  }
  CHECK(empty > 5);
}

TEST_CASE("inconsistent rows give an empty polytope") {
  ConstraintSystem cs;
  cs.dimension = 2;
  cs.inequalities = {row({-1, 0}), row({0, -1})};  // k = 0, impossible on the simplex
  const WeightPolytope p = enumerate_vertices(cs);
  CHECK(p.empty());
  CHECK_THROWS_AS(support_function(p, std::vector<double>{1, 0}), Error);
  CHECK_FALSE(oracle::lp_support(cs, {1, 0}).feasible);
}

TEST_CASE("unbounded sets are rejected") {
  ConstraintSystem cs;
  cs.dimension = 2;
  cs.nonnegative = false;
  try {
    enumerate_vertices(cs);
    FAIL("accepted an unbounded line");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::unbounded);
  }
  cs.inequalities = {row({1, 0})};
  CHECK_THROWS_AS(enumerate_vertices(cs), Error);
  cs.inequalities.push_back(row({0, 1}));
  const WeightPolytope p = enumerate_vertices(cs);
  CHECK(p.vertices.size() == 2);
}

TEST_CASE("double description on a cube cone") {
  // 0 <= y_i <= y_0 for i = 1, 2: the cone over a unit square.
  dd::RationalMatrix rows{{0, 1, 0}, {0, 0, 1}, {1, -1, 0}, {1, 0, -1}};
  const auto rays = dd::extreme_rays(rows, 3);
  CHECK(rays.size() == 4);
  for (const auto& r : rays) {
    CHECK(r[0] == 1);
    for (const auto& v : r) CHECK((v == 0 || v == 1));
  }
  dd::RationalMatrix degenerate{{1, 0, 0}, {0, 1, 0}};
  CHECK_THROWS_AS(dd::extreme_rays(degenerate, 3), Error);
}
