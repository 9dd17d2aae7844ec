#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "rbda/elicitation.hpp"
#include "rbda/error.hpp"
#include "rbda/polytope.hpp"

using namespace rbda;

namespace {

ElicitationSession session_fixture() { return load_session(oracle::data_file("marmorkrebs-session.json")); }
ProblemDefinition problem_fixture() { return load_problem(oracle::data_file("marmorkrebs.json")); }

std::vector<Rational> exact(std::initializer_list<Rational> v) { return v; }

ErrorKind error_kind(auto&& f, std::string* where = nullptr) {
  try {
    f();
  } catch (const Error& e) {
    if (where) *where = e.where();
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::numerical;
}

}  // namespace

TEST_CASE("fixture swing rewards") {
  const ElicitationSession s = session_fixture();
  const SwingRewardSet r = build_rewards(problem_fixture(), s.pairs, *s.worst_choice);
  CHECK(r.attribute_ids == std::vector<std::string>{"biotic", "longevity", "feasibility", "cost"});
  CHECK(r.reference == RewardVector{2, 3, 3, 3});
  REQUIRE(r.swings.size() == 4);
  CHECK(r.swings[0] == RewardVector{1, 3, 3, 3});
  CHECK(r.swings[1] == RewardVector{2, 2, 3, 3});
  CHECK(r.swings[2] == RewardVector{2, 3, 1, 3});
  CHECK(r.swings[3] == RewardVector{2, 3, 3, 1});
  CHECK(r.worst_index == 2);
  CHECK(r.ordering_premise().find("(2, 3, 1, 3)") != std::string::npos);
}

TEST_CASE("fixture constraint rows") {
  const ElicitationSession s = session_fixture();
  const SwingRewardSet r = build_rewards(s.pairs, *s.worst_choice);
  const ConstraintSystem cs = build_constraints(r, s.statements);
  CHECK(cs.dimension == 4);
  CHECK(cs.nonnegative);
  REQUIRE(cs.inequalities.size() == 6);

  // biotic: k1 <= 6/5 k3 and k1 >= 7/10 k3
  CHECK(cs.inequalities[0].coefficients == exact({-1, 0, Rational(6, 5), 0}));
  CHECK(cs.inequalities[0].relation == Relation::at_least_zero);
  CHECK(cs.inequalities[0].label == "biotic lower bracket");
  CHECK(cs.inequalities[1].coefficients == exact({-1, 0, Rational(7, 10), 0}));
  CHECK(cs.inequalities[1].relation == Relation::at_most_zero);
  // longevity: k2 <= k3, k2 >= 4/5 k3
  CHECK(cs.inequalities[2].coefficients == exact({0, -1, 1, 0}));
  CHECK(cs.inequalities[3].coefficients == exact({0, -1, Rational(4, 5), 0}));
  // cost: k4 <= k3 / 10, k4 >= k3 / 25
  CHECK(cs.inequalities[4].coefficients == exact({0, 0, Rational(1, 5), -2}));
  CHECK(cs.inequalities[5].coefficients == exact({0, 0, Rational(2, 25), -2}));

  const std::vector<double> k{0.37, 0.31, 0.31, 0.01};
  CHECK_FALSE(cs.satisfied(k));
  const std::vector<double> inside{0.3, 0.32, 0.36, 0.02};
  CHECK(cs.satisfied(inside));
  for (const auto& row : cs.inequalities) CHECK(row.slack(inside) > 0.0);

  const auto doc = cs.to_json();
  CHECK(doc["rows"].size() == 6 + 1 + 4);
  CHECK(doc["rows"][0]["exact"][2] == "6/5");
  CHECK(doc["rows"][6]["relation"] == "=1");
}

TEST_CASE("an exact bracket pins the swing utility") {
  const ElicitationSession s = session_fixture();
  const SwingRewardSet r = build_rewards(s.pairs, *s.worst_choice);
  std::vector<PreferenceStatement> st = s.statements;
  st[0].alpha_lower = st[0].alpha_upper = 0.5;  // forces k1 = k3
  const ConstraintSystem cs = build_constraints(r, st);
  CHECK(cs.inequalities[0].coefficients == cs.inequalities[1].coefficients);
  const WeightPolytope poly = enumerate_vertices(cs);
  CHECK(poly.vertices.size() == 4);
  for (const auto& v : poly.vertices) CHECK(std::fabs(v[0] - v[2]) < 1e-12);
}

TEST_CASE("vacuous brackets keep only the ordering premise") {
  // With [0, 1] brackets the only content left is r_worst <= r_j, i.e.
  // k_j * (high_j - low_j) <= k_w * (high_w - low_w).
  const std::vector<LevelPair> pairs{{"a", 1, 2}, {"b", 1, 3}, {"c", 1, 4}};
  const SwingRewardSet r = build_rewards(pairs, "c");
  const std::vector<PreferenceStatement> st{{"a", 0.0, 1.0}, {"b", 0.0, 1.0}};
  const ConstraintSystem cs = build_constraints(r, st);
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 2000; ++i) {
    std::vector<double> k{u(gen), u(gen), u(gen)};
    const double sum = k[0] + k[1] + k[2];
    for (double& v : k) v /= sum;
    const bool premise = k[0] * 1 <= k[2] * 3 + 1e-12 && k[1] * 2 <= k[2] * 3 + 1e-12;
    CHECK(cs.satisfied(k, 1e-12) == premise);
  }
}

TEST_CASE("invalid pairs") {
  std::string where;
  CHECK(error_kind([] { build_rewards(std::vector<LevelPair>{{"a", 2, 2}, {"b", 1, 3}}, "a"); }, &where) ==
        ErrorKind::invariant);
  CHECK(where == "LevelPair");
  CHECK(error_kind([] { build_rewards(std::vector<LevelPair>{{"a", 3, 2}, {"b", 1, 3}}, "a"); }) ==
        ErrorKind::invariant);
  CHECK(error_kind([] { build_rewards(std::vector<LevelPair>{{"a", 0, 2}, {"b", 1, 3}}, "a"); }) ==
        ErrorKind::invariant);
  CHECK(error_kind([] { build_rewards(std::vector<LevelPair>{{"a", 1, 2}, {"a", 1, 3}}, "a"); }) ==
        ErrorKind::duplicate);
  CHECK(error_kind([] { build_rewards(std::vector<LevelPair>{{"a", 1, 2}, {"b", 1, 3}}, "z"); }) ==
        ErrorKind::reference);

  const ProblemDefinition p = problem_fixture();
  std::vector<LevelPair> pairs = session_fixture().pairs;
  pairs[0].high = 4;  // "no impact" is not selectable for biotic impact
  CHECK(error_kind([&] { build_rewards(p, pairs, "feasibility"); }, &where) == ErrorKind::invariant);
  CHECK(where == "LevelPair");
  pairs = session_fixture().pairs;
  pairs[2].high = 4;  // fine for feasibility
  CHECK_NOTHROW(build_rewards(p, pairs, "feasibility"));
  pairs.pop_back();
  CHECK_THROWS_AS(build_rewards(p, pairs, "feasibility"), Error);
}

TEST_CASE("invalid statements") {
  const ElicitationSession s = session_fixture();
  const SwingRewardSet r = build_rewards(s.pairs, *s.worst_choice);
  std::string where;

  auto st = s.statements;
  st.push_back({"feasibility", 0.2, 0.3});
  CHECK(error_kind([&] { build_constraints(r, st); }, &where) == ErrorKind::invariant);
  CHECK(where == "PreferenceStatement");

  st = s.statements;
  st.pop_back();
  CHECK(error_kind([&] { build_constraints(r, st); }) == ErrorKind::invariant);

  st = s.statements;
  st[1].alpha_lower = 0.7;
  CHECK(error_kind([&] { build_constraints(r, st); }) == ErrorKind::invariant);

  st = s.statements;
  st[2].alpha_upper = 1.2;
  CHECK(error_kind([&] { build_constraints(r, st); }) == ErrorKind::invariant);

  st = s.statements;
  st.push_back(st[0]);
  CHECK(error_kind([&] { build_constraints(r, st); }) == ErrorKind::duplicate);

  st = s.statements;
  st[0].attribute_id = "salinity";
  CHECK(error_kind([&] { build_constraints(r, st); }) == ErrorKind::reference);
}

TEST_CASE("narrower brackets give a subset of weights") {
  const ElicitationSession s = session_fixture();
  const SwingRewardSet r = build_rewards(s.pairs, *s.worst_choice);
  const ConstraintSystem wide = build_constraints(r, s.statements);
  std::mt19937_64 gen(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    auto st = s.statements;
    for (auto& b : st) {
      const double a = b.alpha_lower + (b.alpha_upper - b.alpha_lower) * u(gen);
      const double c = b.alpha_lower + (b.alpha_upper - b.alpha_lower) * u(gen);
      b.alpha_lower = std::min(a, c);
      b.alpha_upper = std::max(a, c);
    }
    const WeightPolytope narrow = enumerate_vertices(build_constraints(r, st));
    REQUIRE_FALSE(narrow.empty());
    for (const auto& v : narrow.vertices) CHECK(wide.satisfied(v, 1e-9));
  }
}

TEST_CASE("attribute order only permutes coordinates") {
  const ElicitationSession s = session_fixture();
  const ConstraintSystem base = build_constraints(build_rewards(s.pairs, *s.worst_choice), s.statements);
  const WeightPolytope base_poly = enumerate_vertices(base);

  std::vector<std::size_t> perm{0, 1, 2, 3};
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 10; ++trial) {
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<LevelPair> pairs;
    for (std::size_t i : perm) pairs.push_back(s.pairs[i]);
    auto statements = s.statements;
    std::shuffle(statements.begin(), statements.end(), gen);
    const WeightPolytope poly = enumerate_vertices(build_constraints(build_rewards(pairs, *s.worst_choice), statements));
    REQUIRE(poly.vertices.size() == base_poly.vertices.size());
    std::vector<WeightVector> back;
    for (const auto& v : poly.vertices) {
      WeightVector w(4);
      for (std::size_t i = 0; i < 4; ++i) w[perm[i]] = v[i];
      back.push_back(w);
    }
    std::sort(back.begin(), back.end());
    CHECK(oracle::bottleneck_match(back, base_poly.vertices) < 1e-12);
  }
}

TEST_CASE("session documents") {
  const ElicitationSession s = session_fixture();
  CHECK(s.pairs.size() == 4);
  CHECK(s.worst_choice == "feasibility");
  CHECK(s.statements.size() == 3);
  CHECK(s.provenance.contains("notes"));
  CHECK_FALSE(s.content_json().contains("provenance"));

  const ElicitationSession back = parse_session(s.to_json());
  CHECK(back.pairs == s.pairs);
  CHECK(back.statements == s.statements);
  CHECK(back.worst_choice == s.worst_choice);
  CHECK(back.to_json() == s.to_json());

  nlohmann::json bad = s.to_json();
  bad["statements"][0]["alpha_lower"] = 0.9;
  CHECK_THROWS_AS(parse_session(bad), Error);
  bad = s.to_json();
  bad["pairs"][0].erase("low");
  CHECK_THROWS_AS(parse_session(bad), Error);
}

TEST_CASE("statement upserts") {
  std::vector<PreferenceStatement> into{{"a", 0.1, 0.2}};
  merge_statements(into, std::vector<PreferenceStatement>{{"b", 0.3, 0.4}, {"a", 0.5, 0.6}});
  REQUIRE(into.size() == 2);
  CHECK(into[0] == PreferenceStatement{"a", 0.5, 0.6});
  CHECK(into[1] == PreferenceStatement{"b", 0.3, 0.4});
  CHECK_THROWS_AS(merge_statements(into, std::vector<PreferenceStatement>{{"c", 0.7, 0.1}}), Error);
  CHECK(into.size() == 2);
}
