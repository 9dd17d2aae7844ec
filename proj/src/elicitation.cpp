#include "rbda/elicitation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include "rbda/error.hpp"
#include "rbda/json_util.hpp"

namespace rbda {

using json_util::child;
using json_util::require;
using nlohmann::json;

namespace {

std::string format_reward(const RewardVector& r) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < r.size(); ++i) out << (i ? ", " : "") << r[i];
  out << ')';
  return out.str();
}

void check_pair(const LevelPair& p) {
  if (p.low < kWorstLevel || p.high > kBestLevel || p.low > kBestLevel || p.high < kWorstLevel) {
    throw Error(ErrorKind::invariant, "LevelPair",
                "LevelPair: levels for '" + p.attribute_id + "' must lie in 1..4");
  }
  if (!(p.low < p.high)) {
    throw Error(ErrorKind::invariant, "LevelPair",
                "LevelPair: low level must be strictly below high level for '" + p.attribute_id + "'");
  }
}

}  // namespace

std::string SwingRewardSet::ordering_premise() const {
  std::ostringstream out;
  out << "r_worst = " << format_reward(swings.at(worst_index)) << " <= r_j <= r_ref = " << format_reward(reference)
      << " for every swing j";
  return out.str();
}

std::vector<double> ConstraintRow::coefficients_double() const {
  std::vector<double> out;
  out.reserve(coefficients.size());
  for (const auto& c : coefficients) out.push_back(to_double(c));
  return out;
}

double ConstraintRow::slack(std::span<const double> k) const {
  double dot = 0.0;
  for (std::size_t i = 0; i < coefficients.size(); ++i) dot += to_double(coefficients[i]) * k[i];
  return relation == Relation::at_least_zero ? dot : -dot;
}

double ConstraintSystem::min_slack(std::span<const double> k) const {
  double sum = 0.0;
  for (double v : k) sum += v;
  double worst = -std::fabs(sum - 1.0);
  for (const auto& row : inequalities) worst = std::min(worst, row.slack(k));
  if (nonnegative) {
    for (double v : k) worst = std::min(worst, v);
  }
  return worst;
}

bool ConstraintSystem::satisfied(std::span<const double> k, double tolerance) const {
  return k.size() == dimension && min_slack(k) >= -tolerance;
}

json ConstraintSystem::to_json() const {
  json rows = json::array();
  for (const auto& row : inequalities) {
    json exact = json::array();
    for (const auto& c : row.coefficients) exact.push_back(to_string(c));
    rows.push_back({{"label", row.label},
                    {"coefficients", row.coefficients_double()},
                    {"exact", exact},
                    {"relation", row.relation == Relation::at_least_zero ? ">=0" : "<=0"}});
  }
  rows.push_back({{"label", "sum of weights"},
                  {"coefficients", std::vector<double>(dimension, 1.0)},
                  {"exact", std::vector<std::string>(dimension, "1")},
                  {"relation", "=1"}});
  if (nonnegative) {
    for (std::size_t i = 0; i < dimension; ++i) {
      std::vector<double> c(dimension, 0.0);
      c[i] = 1.0;
      std::vector<std::string> e(dimension, "0");
      e[i] = "1";
      rows.push_back({{"label", "k" + std::to_string(i + 1) + " nonnegative"},
                      {"coefficients", c},
                      {"exact", e},
                      {"relation", ">=0"}});
    }
  }
  return {{"dimension", dimension}, {"nonnegative", nonnegative}, {"rows", rows}};
}

SwingRewardSet build_rewards(std::span<const LevelPair> pairs, std::string_view worst_choice) {
  if (pairs.size() < 2) {
    throw Error(ErrorKind::invariant, "SwingRewardSet", "SwingRewardSet: at least 2 attributes are required");
  }
  SwingRewardSet out;
  std::set<std::string> seen;
  for (const auto& p : pairs) {
    check_pair(p);
    if (!seen.insert(p.attribute_id).second) {
      throw Error(ErrorKind::duplicate, p.attribute_id, "level pair given twice for '" + p.attribute_id + "'");
    }
    out.attribute_ids.push_back(p.attribute_id);
    out.reference.push_back(p.high);
  }
  auto it = std::find(out.attribute_ids.begin(), out.attribute_ids.end(), worst_choice);
  if (it == out.attribute_ids.end()) {
    throw Error(ErrorKind::reference, std::string(worst_choice),
                "worst choice '" + std::string(worst_choice) + "' names no attribute");
  }
  out.worst_index = static_cast<std::size_t>(it - out.attribute_ids.begin());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    RewardVector swing = out.reference;
    swing[i] = pairs[i].low;
    out.swings.push_back(std::move(swing));
  }
  return out;
}

SwingRewardSet build_rewards(const ProblemDefinition& problem, std::span<const LevelPair> pairs,
                             std::string_view worst_choice) {
  std::vector<LevelPair> ordered;
  std::map<std::string, const LevelPair*> by_id;
  for (const auto& p : pairs) {
    problem.attribute_index(p.attribute_id);  // throws on unknown ids
    if (!by_id.emplace(p.attribute_id, &p).second) {
      throw Error(ErrorKind::duplicate, p.attribute_id, "level pair given twice for '" + p.attribute_id + "'");
    }
  }
  for (std::size_t i = 0; i < problem.attributes.size(); ++i) {
    const auto& id = problem.attributes[i].id;
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      throw Error(ErrorKind::invariant, "SwingRewardSet", "SwingRewardSet: no level pair for attribute '" + id + "'");
    }
    const LevelPair& p = *it->second;
    check_pair(p);
    for (Level excluded : excluded_pair_levels(problem, i)) {
      if (p.low == excluded || p.high == excluded) {
        throw Error(ErrorKind::invariant, "LevelPair",
                    "LevelPair: level " + std::to_string(excluded) + " of '" + id +
                        "' is excluded from pair selection");
      }
    }
    ordered.push_back(p);
  }
  return build_rewards(ordered, worst_choice);
}

void validate_statement(const PreferenceStatement& s) {
  auto in_unit = [](double v) { return std::isfinite(v) && v >= 0.0 && v <= 1.0; };
  if (!in_unit(s.alpha_lower) || !in_unit(s.alpha_upper)) {
    throw Error(ErrorKind::invariant, "PreferenceStatement",
                "PreferenceStatement: bracket for '" + s.attribute_id + "' must lie in [0, 1]");
  }
  if (!(s.alpha_lower <= s.alpha_upper)) {
    throw Error(ErrorKind::invariant, "PreferenceStatement",
                "PreferenceStatement: alpha_lower exceeds alpha_upper for '" + s.attribute_id + "'");
  }
}

ConstraintSystem build_constraints(const SwingRewardSet& rewards, std::span<const PreferenceStatement> statements,
                                   bool nonnegative) {
  const std::size_t n = rewards.attribute_ids.size();
  std::map<std::size_t, const PreferenceStatement*> by_swing;
  for (const auto& s : statements) {
    validate_statement(s);
    auto it = std::find(rewards.attribute_ids.begin(), rewards.attribute_ids.end(), s.attribute_id);
    if (it == rewards.attribute_ids.end()) {
      throw Error(ErrorKind::reference, s.attribute_id, "statement names unknown attribute '" + s.attribute_id + "'");
    }
    const auto j = static_cast<std::size_t>(it - rewards.attribute_ids.begin());
    if (j == rewards.worst_index) {
      throw Error(ErrorKind::invariant, "PreferenceStatement",
                  "PreferenceStatement: the worst swing '" + s.attribute_id + "' takes no bracket");
    }
    if (!by_swing.emplace(j, &s).second) {
      throw Error(ErrorKind::duplicate, s.attribute_id, "two statements for swing '" + s.attribute_id + "'");
    }
  }

  ConstraintSystem cs;
  cs.dimension = n;
  cs.nonnegative = nonnegative;
  const RewardVector& worst = rewards.swings[rewards.worst_index];
  const RewardVector& ref = rewards.reference;
  auto row = [&](std::size_t j, const Rational& alpha) {
    std::vector<Rational> c(n);
    const Rational one(1);
    for (std::size_t i = 0; i < n; ++i) {
      c[i] = Rational(rewards.swings[j][i]) - (one - alpha) * Rational(worst[i]) - alpha * Rational(ref[i]);
    }
    return c;
  };
  for (std::size_t j = 0; j < n; ++j) {
    if (j == rewards.worst_index) continue;
    auto it = by_swing.find(j);
    if (it == by_swing.end()) {
      throw Error(ErrorKind::invariant, "PreferenceStatement",
                  "PreferenceStatement: missing bracket for swing '" + rewards.attribute_ids[j] + "'");
    }
    const PreferenceStatement& s = *it->second;
    cs.inequalities.push_back({row(j, to_rational(s.alpha_lower)), Relation::at_least_zero,
                               rewards.attribute_ids[j] + " lower bracket"});
    cs.inequalities.push_back({row(j, to_rational(s.alpha_upper)), Relation::at_most_zero,
                               rewards.attribute_ids[j] + " upper bracket"});
  }
  return cs;
}

json ElicitationSession::content_json() const {
  json pairs_json = json::array();
  for (const auto& p : pairs) pairs_json.push_back({{"attribute", p.attribute_id}, {"low", p.low}, {"high", p.high}});
  json statements_json = json::array();
  for (const auto& s : statements) {
    statements_json.push_back(
        {{"attribute", s.attribute_id}, {"alpha_lower", s.alpha_lower}, {"alpha_upper", s.alpha_upper}});
  }
  return {{"pairs", pairs_json},
          {"worst_choice", worst_choice ? json(*worst_choice) : json(nullptr)},
          {"statements", statements_json}};
}

json ElicitationSession::to_json() const {
  json out = content_json();
  out["provenance"] = provenance;
  return out;
}

ElicitationSession parse_session(const json& doc) {
  json_util::require_object(doc, "");
  ElicitationSession s;
  if (auto it = doc.find("pairs"); it != doc.end()) {
    json_util::require_array(*it, "/pairs");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string p = child("/pairs", i);
      const json& e = (*it)[i];
      s.pairs.push_back({json_util::require_string(require(e, "attribute", p), child(p, "attribute")),
                         json_util::require_integer(require(e, "low", p), child(p, "low")),
                         json_util::require_integer(require(e, "high", p), child(p, "high"))});
    }
  }
  if (auto it = doc.find("worst_choice"); it != doc.end() && !it->is_null()) {
    s.worst_choice = json_util::require_string(*it, "/worst_choice");
  }
  if (auto it = doc.find("statements"); it != doc.end()) {
    json_util::require_array(*it, "/statements");
    for (std::size_t i = 0; i < it->size(); ++i) {
      const std::string p = child("/statements", i);
      const json& e = (*it)[i];
      PreferenceStatement st{json_util::require_string(require(e, "attribute", p), child(p, "attribute")),
                             json_util::require_number(require(e, "alpha_lower", p), child(p, "alpha_lower")),
                             json_util::require_number(require(e, "alpha_upper", p), child(p, "alpha_upper"))};
      validate_statement(st);
      s.statements.push_back(std::move(st));
    }
  }
  if (auto it = doc.find("provenance"); it != doc.end()) s.provenance = json_util::require_object(*it, "/provenance");
  return s;
}

ElicitationSession load_session(const std::string& file) { return parse_session(json_util::read_file(file)); }

void merge_statements(std::vector<PreferenceStatement>& into, std::span<const PreferenceStatement> updates) {
  for (const auto& u : updates) validate_statement(u);
  for (const auto& u : updates) {
    auto it = std::find_if(into.begin(), into.end(), [&](const auto& s) { return s.attribute_id == u.attribute_id; });
    if (it == into.end()) {
      into.push_back(u);
    } else {
      *it = u;
    }
  }
}

}  // namespace rbda
