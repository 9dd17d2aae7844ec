#ifndef RBDA_ELICITATION_HPP
#define RBDA_ELICITATION_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rbda/problem.hpp"
#include "rbda/rational.hpp"

namespace rbda {

// Generalised swing weighting. The expert picks two levels per attribute;
// the reference reward has every attribute at its high level and swing j
// lowers attribute j to its low level. With r_w the worst swing and r_ref
// the reference, each remaining swing is bracketed by lotteries
//
//   (1 - lo_j) r_w + lo_j r_ref  <=  r_j  <=  (1 - hi_j) r_w + hi_j r_ref
//
// which becomes two linear rows in the attribute weights k.

struct LevelPair {
  std::string attribute_id;
  Level low = 0;
  Level high = 0;

  bool operator==(const LevelPair&) const = default;
};

using RewardVector = std::vector<Level>;

struct SwingRewardSet {
  std::vector<std::string> attribute_ids;
  RewardVector reference;
  std::vector<RewardVector> swings;  // swings[i] lowers attribute i
  std::size_t worst_index = 0;

  /// Audit line recording the assumed ordering r_worst <= r_j <= r_ref.
  std::string ordering_premise() const;
};

struct PreferenceStatement {
  std::string attribute_id;  // identifies the swing
  double alpha_lower = 0.0;
  double alpha_upper = 1.0;

  bool operator==(const PreferenceStatement&) const = default;
};

enum class Relation { at_least_zero, at_most_zero };

struct ConstraintRow {
  std::vector<Rational> coefficients;
  Relation relation = Relation::at_least_zero;
  std::string label;

  std::vector<double> coefficients_double() const;
  /// c.k for >= rows, -c.k for <= rows: non-negative iff satisfied.
  double slack(std::span<const double> k) const;
};

/// Rows in k plus the implicit simplex equality sum(k) = 1 and, when
/// `nonnegative` is set, k >= 0.
struct ConstraintSystem {
  std::size_t dimension = 0;
  std::vector<ConstraintRow> inequalities;
  bool nonnegative = true;

  /// Smallest slack over every row, the equality (as -|sum - 1|) and the
  /// nonnegativity bounds.
  double min_slack(std::span<const double> k) const;
  bool satisfied(std::span<const double> k, double tolerance = 1e-9) const;

  nlohmann::json to_json() const;
};

/// Pairs in attribute order define the coordinate order of k. Throws on
/// degenerate pairs, levels outside 1..4, duplicate attributes, or a worst
/// choice that names no attribute.
SwingRewardSet build_rewards(std::span<const LevelPair> pairs, std::string_view worst_choice);

/// Problem-aware variant: pairs may come in any order and are laid out in
/// the problem's attribute order; every attribute needs exactly one pair and
/// excluded levels may not be used.
SwingRewardSet build_rewards(const ProblemDefinition& problem, std::span<const LevelPair> pairs,
                             std::string_view worst_choice);

/// Needs one statement per non-worst swing.
ConstraintSystem build_constraints(const SwingRewardSet& rewards, std::span<const PreferenceStatement> statements,
                                   bool nonnegative = true);

/// Elicitation record as stored in session files.
struct ElicitationSession {
  std::vector<LevelPair> pairs;
  std::optional<std::string> worst_choice;
  std::vector<PreferenceStatement> statements;
  nlohmann::json provenance = nlohmann::json::object();

  /// Content that determines the weights; excludes provenance.
  nlohmann::json content_json() const;
  nlohmann::json to_json() const;
};

ElicitationSession parse_session(const nlohmann::json& document);
ElicitationSession load_session(const std::string& file);

/// Upserts statements by attribute id; validates each bracket.
void merge_statements(std::vector<PreferenceStatement>& into, std::span<const PreferenceStatement> updates);

void validate_statement(const PreferenceStatement& statement);

}  // namespace rbda

#endif  // RBDA_ELICITATION_HPP
