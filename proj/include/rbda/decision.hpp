#ifndef RBDA_DECISION_HPP
#define RBDA_DECISION_HPP

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rbda/inference.hpp"
#include "rbda/polytope.hpp"
#include "rbda/problem.hpp"

namespace rbda {

/// Marginal utility of a Likert level; the identity unless a test or a
/// caller supplies a positive affine rescaling.
using MarginalUtility = std::function<double(Level)>;
MarginalUtility identity_utility();

struct Interval {
  double lower = 0.0;
  double upper = 0.0;

  bool operator==(const Interval&) const = default;
};

struct UtilityEndpoints {
  double success = 0.0;  // sum_i k_i U(a_i) at the success scores
  double failure = 0.0;  // same at the failure scores
};

UtilityEndpoints utility_endpoints(const ProblemDefinition& problem, const DecisionAlternative& decision,
                                   std::span<const double> weights,
                                   const MarginalUtility& utility = identity_utility());

/// p U_fail(k) + (1 - p) U_succ(k), the posterior expected utility at a
/// presence probability p.
double expected_utility(const UtilityEndpoints& u, double presence);

/// [min, max] of the expected utility over weight vertices and the two
/// posterior endpoints; exact because the expected utility is affine in p
/// and linear in k.
Interval expected_utility_interval(const ProblemDefinition& problem, const DecisionAlternative& decision,
                                   const ProbabilityInterval& posterior, const WeightPolytope& polytope,
                                   const MarginalUtility& utility = identity_utility());

struct DominanceResult {
  std::vector<std::string> undominated;
  std::map<std::string, std::string> witness;  // excluded id -> dominating id
};

/// d is excluded iff upper(d) < max over d' of lower(d'); the witness is the
/// first decision attaining that maximum.
DominanceResult interval_dominance(std::span<const std::pair<std::string, Interval>> intervals);

struct MaximinChoice {
  std::string id;
  bool tie = false;
  std::vector<std::string> tied;  // every decision attaining the best lower bound
};

/// Argmax of the lower expected utility over all decisions, ties broken by
/// input order.
MaximinChoice maximin_choice(std::span<const std::pair<std::string, Interval>> intervals);

struct DecisionEntry {
  std::string id;
  ProbabilityInterval presence_after;
  Interval eu;
  bool dominated = false;
  std::optional<std::string> witness;
};

struct ScenarioReport {
  std::optional<Corner> corner;  // empty for the full-box analysis
  ProbabilityInterval presence_before;
  std::vector<DecisionEntry> decisions;
  MaximinChoice maximin;

  std::vector<std::string> dominated_ids() const;
  const DecisionEntry& entry(const std::string& id) const;
};

struct DecisionReport {
  ScenarioReport full;
  std::vector<ScenarioReport> corners;            // aligned with box_corners()
  std::vector<std::string> dominated_at_every_corner;
};

/// Interval analysis over an arbitrary hyperparameter box.
ScenarioReport analyze_box(const ProblemDefinition& problem, const HyperparameterBox& hyper,
                           const WeightPolytope& polytope, const MarginalUtility& utility = identity_utility());

/// Fixes (t, alpha) at each box corner while keeping the efficacy intervals
/// and the weight polytope.
std::vector<ScenarioReport> refined_corner_analysis(const ProblemDefinition& problem, const WeightPolytope& polytope,
                                                    const MarginalUtility& utility = identity_utility());

DecisionReport analyze(const ProblemDefinition& problem, const WeightPolytope& polytope,
                       const MarginalUtility& utility = identity_utility());

}  // namespace rbda

#endif  // RBDA_DECISION_HPP
