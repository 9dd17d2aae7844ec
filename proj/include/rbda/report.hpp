#ifndef RBDA_REPORT_HPP
#define RBDA_REPORT_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "rbda/decision.hpp"
#include "rbda/elicitation.hpp"
#include "rbda/polytope.hpp"
#include "rbda/problem.hpp"

namespace rbda {

/// Everything derived from a (problem, elicitation) pair. `report` is empty
/// when the weight polytope is empty; `inconsistency` then explains why.
struct Analysis {
  SwingRewardSet rewards;
  ConstraintSystem constraints;
  WeightPolytope polytope;
  std::optional<DecisionReport> report;
  std::string inconsistency;
  std::string digest;
};

/// Requires pairs, a worst choice and a statement for every non-worst swing.
Analysis run_analysis(const ProblemDefinition& problem, const ElicitationSession& session);

/// Weights only; no problem needed. Pair order fixes the weight order.
WeightPolytope weights_from_session(const ElicitationSession& session);

/// "sha256:<hex>" over the canonical problem JSON and the elicitation
/// content (provenance excluded).
std::string input_digest(const ProblemDefinition& problem, const ElicitationSession& session);

/// Names statements whose removal restores feasibility.
std::string inconsistency_summary(const SwingRewardSet& rewards, const std::vector<PreferenceStatement>& statements,
                                  bool nonnegative = true);

nlohmann::json vertices_json(const WeightPolytope& polytope);

nlohmann::json report_json(const ProblemDefinition& problem, const DecisionReport& report, const std::string& digest);

/// Canonical text: sorted keys, numbers rounded to 6 significant digits.
std::string report_text(const ProblemDefinition& problem, const DecisionReport& report, const std::string& digest);

/// Interval endpoints for plotting, one row per (scope, decision).
nlohmann::json plot_data_json(const ProblemDefinition& problem, const DecisionReport& report);
std::string plot_data_csv(const ProblemDefinition& problem, const DecisionReport& report);

}  // namespace rbda

#endif  // RBDA_REPORT_HPP
