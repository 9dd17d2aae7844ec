#include "rbda/decision.hpp"

#include <algorithm>
#include <limits>

#include "rbda/error.hpp"

namespace rbda {

MarginalUtility identity_utility() {
  return [](Level a) { return static_cast<double>(a); };
}

UtilityEndpoints utility_endpoints(const ProblemDefinition& problem, const DecisionAlternative& d,
                                   std::span<const double> k, const MarginalUtility& utility) {
  if (k.size() != problem.attributes.size()) {
    throw Error(ErrorKind::domain, "weights", "weight vector length does not match the attribute count");
  }
  const auto success = problem.score_vector(d.success_scores);
  const auto failure = problem.score_vector(failure_scores(d, problem.failure_policy));
  UtilityEndpoints u;
  for (std::size_t i = 0; i < k.size(); ++i) {
    u.success += k[i] * utility(success[i]);
    u.failure += k[i] * utility(failure[i]);
  }
  return u;
}

double expected_utility(const UtilityEndpoints& u, double presence) {
  return presence * u.failure + (1.0 - presence) * u.success;
}

Interval expected_utility_interval(const ProblemDefinition& problem, const DecisionAlternative& d,
                                   const ProbabilityInterval& posterior, const WeightPolytope& polytope,
                                   const MarginalUtility& utility) {
  if (polytope.empty()) {
    throw Error(ErrorKind::invariant, "WeightPolytope", "WeightPolytope: no feasible weights");
  }
  Interval out{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& k : polytope.vertices) {
    const UtilityEndpoints u = utility_endpoints(problem, d, k, utility);
    for (double p : {posterior.lower, posterior.upper}) {
      const double eu = expected_utility(u, p);
      out.lower = std::min(out.lower, eu);
      out.upper = std::max(out.upper, eu);
    }
  }
  return out;
}

DominanceResult interval_dominance(std::span<const std::pair<std::string, Interval>> intervals) {
  DominanceResult out;
  if (intervals.empty()) return out;
  std::size_t best = 0;
  for (std::size_t i = 1; i < intervals.size(); ++i) {
    if (intervals[i].second.lower > intervals[best].second.lower) best = i;
  }
  const double threshold = intervals[best].second.lower;
  for (const auto& [id, eu] : intervals) {
    if (eu.upper < threshold) {
      out.witness[id] = intervals[best].first;
    } else {
      out.undominated.push_back(id);
    }
  }
  return out;
}

MaximinChoice maximin_choice(std::span<const std::pair<std::string, Interval>> intervals) {
  MaximinChoice out;
  if (intervals.empty()) return out;
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& [id, eu] : intervals) best = std::max(best, eu.lower);
  for (const auto& [id, eu] : intervals) {
    if (eu.lower == best) out.tied.push_back(id);
  }
  out.id = out.tied.front();
  out.tie = out.tied.size() > 1;
  return out;
}

std::vector<std::string> ScenarioReport::dominated_ids() const {
  std::vector<std::string> out;
  for (const auto& e : decisions) {
    if (e.dominated) out.push_back(e.id);
  }
  return out;
}

const DecisionEntry& ScenarioReport::entry(const std::string& id) const {
  for (const auto& e : decisions) {
    if (e.id == id) return e;
  }
  throw Error(ErrorKind::reference, id, "no decision '" + id + "' in report");
}

ScenarioReport analyze_box(const ProblemDefinition& problem, const HyperparameterBox& hyper,
                           const WeightPolytope& polytope, const MarginalUtility& utility) {
  ScenarioReport report;
  std::vector<std::pair<std::string, Interval>> intervals;
  bool first = true;
  for (const auto& d : problem.decisions) {
    const BoxPosterior posterior = posterior_box(hyper, problem.evidence, d);
    if (first) {
      report.presence_before = posterior.presence_before;
      first = false;
    }
    DecisionEntry e;
    e.id = d.id;
    e.presence_after = posterior.presence_after;
    e.eu = expected_utility_interval(problem, d, posterior.presence_after, polytope, utility);
    intervals.emplace_back(d.id, e.eu);
    report.decisions.push_back(std::move(e));
  }
  const DominanceResult dominance = interval_dominance(intervals);
  for (auto& e : report.decisions) {
    if (auto it = dominance.witness.find(e.id); it != dominance.witness.end()) {
      e.dominated = true;
      e.witness = it->second;
    }
  }
  report.maximin = maximin_choice(intervals);
  return report;
}

std::vector<ScenarioReport> refined_corner_analysis(const ProblemDefinition& problem, const WeightPolytope& polytope,
                                                    const MarginalUtility& utility) {
  std::vector<ScenarioReport> out;
  for (const Corner& c : box_corners(problem.hyper)) {
    HyperparameterBox point = problem.hyper;
    point.t_range = {c.t, c.t};
    point.alpha_range = {c.alpha, c.alpha};
    ScenarioReport r = analyze_box(problem, point, polytope, utility);
    r.corner = c;
    out.push_back(std::move(r));
  }
  return out;
}

DecisionReport analyze(const ProblemDefinition& problem, const WeightPolytope& polytope,
                       const MarginalUtility& utility) {
  DecisionReport report;
  report.full = analyze_box(problem, problem.hyper, polytope, utility);
  report.corners = refined_corner_analysis(problem, polytope, utility);
  for (const auto& d : problem.decisions) {
    const bool everywhere = std::all_of(report.corners.begin(), report.corners.end(),
                                        [&](const ScenarioReport& r) { return r.entry(d.id).dominated; });
    if (everywhere) report.dominated_at_every_corner.push_back(d.id);
  }
  return report;
}

}  // namespace rbda
