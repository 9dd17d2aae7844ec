#ifndef RBDA_PROBLEM_HPP
#define RBDA_PROBLEM_HPP

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace rbda {

/// Likert level, 1 (worst) .. 4 (best). Marginal utility of a level is the
/// level itself.
using Level = int;
inline constexpr Level kWorstLevel = 1;
inline constexpr Level kBestLevel = 4;
inline constexpr std::size_t kLevelCount = 4;

using ScoreMap = std::map<std::string, Level>;

struct LevelDescription {
  Level level = 0;
  std::string short_text;
  std::string description;

  bool operator==(const LevelDescription&) const = default;
};

struct AttributeScale {
  std::string id;
  std::string name;
  std::array<LevelDescription, kLevelCount> levels;  // index 0 holds level 1
  // Levels that may not be picked when choosing swing level pairs. When
  // absent the problem-level default applies (see excluded_pair_levels).
  std::optional<std::vector<Level>> pair_excluded_levels;

  bool operator==(const AttributeScale&) const = default;
};

struct ProbabilityInterval {
  double lower = 0.0;
  double upper = 0.0;

  /// Throws Error(invariant, "ProbabilityInterval") unless 0 <= lower <= upper <= 1.
  static ProbabilityInterval checked(double lower, double upper, std::string_view path = {});
  double width() const { return upper - lower; }
  bool contains(double p) const { return lower <= p && p <= upper; }

  bool operator==(const ProbabilityInterval&) const = default;
};

struct DecisionAlternative {
  std::string id;
  std::string name;
  ScoreMap success_scores;
  ProbabilityInterval efficacy;  // bounds on P(eradication | present, d)

  bool operator==(const DecisionAlternative&) const = default;
};

struct HyperparameterBox {
  ProbabilityInterval t_range;      // prior mean of presence probability
  ProbabilityInterval alpha_range;  // detection probability
  double s = 2.0;                   // prior strength (equivalent sample size)

  bool operator==(const HyperparameterBox&) const = default;
};

struct Evidence {
  bool observed = false;

  bool operator==(const Evidence&) const = default;
};

struct FailurePolicy {
  std::set<std::string> drops_to_worst;

  bool operator==(const FailurePolicy&) const = default;
};

struct ProblemDefinition {
  std::vector<AttributeScale> attributes;
  std::vector<DecisionAlternative> decisions;
  HyperparameterBox hyper;
  Evidence evidence;
  FailurePolicy failure_policy;

  std::size_t attribute_index(std::string_view id) const;
  const DecisionAlternative& decision(std::string_view id) const;

  /// Scores laid out in attribute order.
  std::vector<Level> score_vector(const ScoreMap& scores) const;

  bool operator==(const ProblemDefinition&) const = default;
};

/// Enforces every structural and domain invariant; throws rbda::Error.
void validate(const ProblemDefinition& problem);

ProblemDefinition parse_problem(const nlohmann::json& document);
ProblemDefinition parse_problem_text(std::string_view text);
ProblemDefinition load_problem(const std::string& file);
nlohmann::json to_json(const ProblemDefinition& problem);

/// Scores that hold if eradication fails: every attribute listed in the
/// policy drops to level 1, the rest keep their success score.
ScoreMap failure_scores(const DecisionAlternative& decision, const FailurePolicy& policy);

/// Explicit exclusions if the attribute carries them; otherwise the
/// "no impact" level 4 is excluded for attributes that collapse on failure.
std::vector<Level> excluded_pair_levels(const ProblemDefinition& problem, std::size_t attribute);

}  // namespace rbda

#endif  // RBDA_PROBLEM_HPP
