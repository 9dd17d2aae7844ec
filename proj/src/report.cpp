#include "rbda/report.hpp"

#include <cstdio>
#include <sstream>

#include <openssl/evp.h>

#include "rbda/error.hpp"
#include "rbda/json_util.hpp"

namespace rbda {

using json_util::canonical_number;
using nlohmann::json;

namespace {

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorKind::numerical, "digest", "SHA-256 computation failed");
  }
  std::string out;
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    out += buf;
  }
  return out;
}

json pair_of(double lo, double hi) { return json::array({canonical_number(lo), canonical_number(hi)}); }

json scenario_json(const ScenarioReport& r) {
  json decisions = json::array();
  for (const auto& e : r.decisions) {
    decisions.push_back({{"id", e.id},
                         {"presence_after", pair_of(e.presence_after.lower, e.presence_after.upper)},
                         {"eu", pair_of(e.eu.lower, e.eu.upper)},
                         {"dominated", e.dominated},
                         {"dominance_witness", e.witness ? json(*e.witness) : json(nullptr)}});
  }
  json out = {{"decisions", decisions},
              {"presence_before", pair_of(r.presence_before.lower, r.presence_before.upper)},
              {"maximin", r.maximin.id},
              {"maximin_tie", r.maximin.tie},
              {"maximin_tied", r.maximin.tied}};
  if (r.corner) {
    out["t"] = canonical_number(r.corner->t);
    out["alpha"] = canonical_number(r.corner->alpha);
  }
  return out;
}

struct PlotRow {
  std::string scope;
  std::string decision;
  double presence_lo, presence_hi, eu_lo, eu_hi, maximin_line;
  bool dominated;
};

std::vector<PlotRow> plot_rows(const DecisionReport& report) {
  std::vector<PlotRow> rows;
  auto add = [&](const ScenarioReport& r, const std::string& scope) {
    const double line = r.entry(r.maximin.id).eu.lower;
    for (const auto& e : r.decisions) {
      rows.push_back({scope, e.id, e.presence_after.lower, e.presence_after.upper, e.eu.lower, e.eu.upper, line,
                      e.dominated});
    }
  };
  add(report.full, "full");
  for (const auto& c : report.corners) {
    std::ostringstream scope;
    scope << "t=" << canonical_number(c.corner->t) << ";alpha=" << canonical_number(c.corner->alpha);
    add(c, scope.str());
  }
  return rows;
}

}  // namespace

std::string input_digest(const ProblemDefinition& problem, const ElicitationSession& session) {
  return "sha256:" + sha256_hex(to_json(problem).dump() + "\n" + session.content_json().dump());
}

WeightPolytope weights_from_session(const ElicitationSession& session) {
  if (!session.worst_choice) throw Error(ErrorKind::stage, "worst_choice", "session has no worst choice yet");
  const SwingRewardSet rewards = build_rewards(session.pairs, *session.worst_choice);
  return enumerate_vertices(build_constraints(rewards, session.statements));
}

std::string inconsistency_summary(const SwingRewardSet& rewards, const std::vector<PreferenceStatement>& statements,
                                  bool nonnegative) {
  std::vector<std::string> culprits;
  for (std::size_t drop = 0; drop < statements.size(); ++drop) {
    std::vector<PreferenceStatement> rest;
    for (std::size_t i = 0; i < statements.size(); ++i) {
      if (i != drop) rest.push_back(statements[i]);
    }
    // Relax the dropped bracket to [0, 1] instead of removing it so the
    // statement set stays complete.
    PreferenceStatement relaxed = statements[drop];
    relaxed.alpha_lower = 0.0;
    relaxed.alpha_upper = 1.0;
    rest.push_back(relaxed);
    if (!enumerate_vertices(build_constraints(rewards, rest, nonnegative)).empty()) {
      culprits.push_back(statements[drop].attribute_id);
    }
  }
  std::ostringstream out;
  out << "no weight vector satisfies all lottery brackets";
  if (culprits.empty()) {
    out << "; no single bracket is responsible, revisit several of them";
  } else {
    out << "; relaxing any one of the brackets for ";
    for (std::size_t i = 0; i < culprits.size(); ++i) out << (i ? ", " : "") << culprits[i];
    out << " restores feasibility";
  }
  return out.str();
}

Analysis run_analysis(const ProblemDefinition& problem, const ElicitationSession& session) {
  if (!session.worst_choice) throw Error(ErrorKind::stage, "worst_choice", "session has no worst choice yet");
  Analysis a;
  a.rewards = build_rewards(problem, session.pairs, *session.worst_choice);
  a.constraints = build_constraints(a.rewards, session.statements);
  a.polytope = enumerate_vertices(a.constraints);
  a.digest = input_digest(problem, session);
  if (a.polytope.empty()) {
    a.inconsistency = inconsistency_summary(a.rewards, session.statements);
  } else {
    a.report = analyze(problem, a.polytope);
  }
  return a;
}

json vertices_json(const WeightPolytope& polytope) {
  json out = json::array();
  for (const auto& v : polytope.vertices) {
    json row = json::array();
    for (double x : v) row.push_back(canonical_number(x));
    out.push_back(std::move(row));
  }
  return out;
}

json report_json(const ProblemDefinition& problem, const DecisionReport& report, const std::string& digest) {
  json corners = json::array();
  for (const auto& c : report.corners) corners.push_back(scenario_json(c));
  json out = scenario_json(report.full);
  out["corners"] = corners;
  out["dominated_at_every_corner"] = report.dominated_at_every_corner;
  out["decision_rule"] = "interval dominance";
  out["maximin_scope"] = "all decisions";
  out["digest"] = digest;
  json names = json::object();
  for (const auto& d : problem.decisions) names[d.id] = d.name;
  out["decision_names"] = names;
  out["hyperparameters"] = {{"t", pair_of(problem.hyper.t_range.lower, problem.hyper.t_range.upper)},
                            {"alpha", pair_of(problem.hyper.alpha_range.lower, problem.hyper.alpha_range.upper)},
                            {"s", canonical_number(problem.hyper.s)}};
  return out;
}

std::string report_text(const ProblemDefinition& problem, const DecisionReport& report, const std::string& digest) {
  return json_util::canonical_dump(report_json(problem, report, digest));
}

json plot_data_json(const ProblemDefinition&, const DecisionReport& report) {
  json rows = json::array();
  for (const auto& r : plot_rows(report)) {
    rows.push_back({{"scope", r.scope},
                    {"decision", r.decision},
                    {"presence_after", pair_of(r.presence_lo, r.presence_hi)},
                    {"eu", pair_of(r.eu_lo, r.eu_hi)},
                    {"maximin_line", canonical_number(r.maximin_line)},
                    {"dominated", r.dominated}});
  }
  return rows;
}

std::string plot_data_csv(const ProblemDefinition&, const DecisionReport& report) {
  std::ostringstream out;
  out << "scope,decision,presence_lower,presence_upper,eu_lower,eu_upper,maximin_line,dominated\n";
  for (const auto& r : plot_rows(report)) {
    out << r.scope << ',' << r.decision << ',' << canonical_number(r.presence_lo) << ','
        << canonical_number(r.presence_hi) << ',' << canonical_number(r.eu_lo) << ',' << canonical_number(r.eu_hi)
        << ',' << canonical_number(r.maximin_line) << ',' << (r.dominated ? "true" : "false") << '\n';
  }
  return out.str();
}

}  // namespace rbda
