#include "rbda/problem.hpp"

#include <algorithm>
#include <cmath>

#include "rbda/error.hpp"
#include "rbda/json_util.hpp"

namespace rbda {

using json_util::child;
using json_util::require;
using nlohmann::json;

namespace {

[[noreturn]] void invariant(std::string rule, const std::string& message) {
  throw Error(ErrorKind::invariant, std::move(rule), rule + ": " + message);
}

std::string path_suffix(std::string_view path) {
  return path.empty() ? std::string() : " at " + std::string(path);
}

ProbabilityInterval parse_interval(const json& value, std::string_view path) {
  json_util::require_array(value, path);
  if (value.size() != 2) {
    throw Error(ErrorKind::schema, std::string(path), std::string(path) + ": expected [lower, upper]");
  }
  double lo = json_util::require_number(value[0], child(path, std::size_t{0}));
  double hi = json_util::require_number(value[1], child(path, std::size_t{1}));
  return ProbabilityInterval::checked(lo, hi, path);
}

AttributeScale parse_attribute(const json& doc, const std::string& path) {
  AttributeScale a;
  a.id = json_util::require_string(require(doc, "id", path), child(path, "id"));
  a.name = json_util::require_string(require(doc, "name", path), child(path, "name"));
  const std::string lpath = child(path, "levels");
  const json& levels = json_util::require_array(require(doc, "levels", path), lpath);
  if (levels.size() != kLevelCount) {
    invariant("AttributeScale", "attribute '" + a.id + "' must have exactly 4 levels" + path_suffix(lpath));
  }
  std::array<bool, kLevelCount> seen{};
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::string p = child(lpath, i);
    LevelDescription d;
    d.level = json_util::require_integer(require(levels[i], "level", p), child(p, "level"));
    d.short_text = json_util::require_string(require(levels[i], "short", p), child(p, "short"));
    d.description = json_util::require_string(require(levels[i], "description", p), child(p, "description"));
    if (d.level < kWorstLevel || d.level > kBestLevel) {
      invariant("AttributeScale", "level numbers must lie in 1..4" + path_suffix(p));
    }
    if (seen[d.level - 1]) {
      invariant("AttributeScale", "level " + std::to_string(d.level) + " listed twice" + path_suffix(p));
    }
    seen[d.level - 1] = true;
    a.levels[d.level - 1] = std::move(d);
  }
  if (auto it = doc.find("pair_excluded_levels"); it != doc.end()) {
    const std::string p = child(path, "pair_excluded_levels");
    json_util::require_array(*it, p);
    std::vector<Level> excluded;
    for (std::size_t i = 0; i < it->size(); ++i) {
      excluded.push_back(json_util::require_integer((*it)[i], child(p, i)));
    }
    a.pair_excluded_levels = std::move(excluded);
  }
  return a;
}

DecisionAlternative parse_decision(const json& doc, const std::string& path) {
  DecisionAlternative d;
  d.id = json_util::require_string(require(doc, "id", path), child(path, "id"));
  d.name = json_util::require_string(require(doc, "name", path), child(path, "name"));
  const std::string spath = child(path, "success_scores");
  const json& scores = json_util::require_object(require(doc, "success_scores", path), spath);
  for (const auto& [key, value] : scores.items()) {
    d.success_scores[key] = json_util::require_integer(value, child(spath, key));
  }
  d.efficacy = parse_interval(require(doc, "efficacy", path), child(path, "efficacy"));
  return d;
}

}  // namespace

ProbabilityInterval ProbabilityInterval::checked(double lower, double upper, std::string_view path) {
  if (!(lower >= 0.0 && upper <= 1.0)) {
    invariant("ProbabilityInterval", "bounds must lie in [0, 1]" + path_suffix(path));
  }
  if (!(lower <= upper)) {
    invariant("ProbabilityInterval", "lower bound exceeds upper bound" + path_suffix(path));
  }
  return {lower, upper};
}

std::size_t ProblemDefinition::attribute_index(std::string_view id) const {
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    if (attributes[i].id == id) return i;
  }
  throw Error(ErrorKind::reference, std::string(id), "unknown attribute '" + std::string(id) + "'");
}

const DecisionAlternative& ProblemDefinition::decision(std::string_view id) const {
  for (const auto& d : decisions) {
    if (d.id == id) return d;
  }
  throw Error(ErrorKind::reference, std::string(id), "unknown decision '" + std::string(id) + "'");
}

std::vector<Level> ProblemDefinition::score_vector(const ScoreMap& scores) const {
  std::vector<Level> out;
  out.reserve(attributes.size());
  for (const auto& a : attributes) out.push_back(scores.at(a.id));
  return out;
}

void validate(const ProblemDefinition& p) {
  if (p.attributes.size() < 2) invariant("ProblemDefinition", "at least 2 attributes are required");
  if (p.decisions.size() < 2) invariant("ProblemDefinition", "at least 2 decisions are required");

  std::set<std::string> attribute_ids;
  for (const auto& a : p.attributes) {
    if (a.id.empty()) invariant("AttributeScale", "attribute id must be non-empty");
    if (!attribute_ids.insert(a.id).second) {
      throw Error(ErrorKind::duplicate, a.id, "duplicate attribute id '" + a.id + "'");
    }
    for (std::size_t i = 0; i < kLevelCount; ++i) {
      if (a.levels[i].level != static_cast<Level>(i + 1)) {
        invariant("AttributeScale", "attribute '" + a.id + "' levels must be numbered 1..4 without gaps");
      }
    }
    if (a.pair_excluded_levels) {
      for (Level l : *a.pair_excluded_levels) {
        if (l < kWorstLevel || l > kBestLevel) {
          invariant("AttributeScale", "attribute '" + a.id + "' excludes a level outside 1..4");
        }
      }
    }
  }

  std::set<std::string> decision_ids;
  for (const auto& d : p.decisions) {
    if (d.id.empty()) invariant("DecisionAlternative", "decision id must be non-empty");
    if (!decision_ids.insert(d.id).second) {
      throw Error(ErrorKind::duplicate, d.id, "duplicate decision id '" + d.id + "'");
    }
    for (const auto& [attr, level] : d.success_scores) {
      if (!attribute_ids.count(attr)) {
        throw Error(ErrorKind::reference, "/decisions/" + d.id + "/success_scores/" + attr,
                    "decision '" + d.id + "' scores unknown attribute '" + attr + "'");
      }
      if (level < kWorstLevel || level > kBestLevel) {
        invariant("DecisionAlternative", "decision '" + d.id + "' scores '" + attr + "' outside 1..4");
      }
    }
    for (const auto& a : p.attributes) {
      if (!d.success_scores.count(a.id)) {
        invariant("DecisionAlternative", "decision '" + d.id + "' does not score attribute '" + a.id + "'");
      }
    }
    ProbabilityInterval::checked(d.efficacy.lower, d.efficacy.upper, "/decisions/" + d.id + "/efficacy");
  }

  const auto& h = p.hyper;
  ProbabilityInterval::checked(h.t_range.lower, h.t_range.upper, "/hyperparameters/t");
  ProbabilityInterval::checked(h.alpha_range.lower, h.alpha_range.upper, "/hyperparameters/alpha");
  if (!(h.t_range.lower > 0.0 && h.t_range.upper < 1.0)) {
    invariant("HyperparameterBox", "t range must lie strictly inside (0, 1)");
  }
  if (!(h.alpha_range.lower > 0.0)) {
    invariant("HyperparameterBox", "detection probability lower bound must be positive");
  }
  if (!(h.s > 0.0) || !std::isfinite(h.s)) invariant("HyperparameterBox", "s must be a positive real");

  for (const auto& id : p.failure_policy.drops_to_worst) {
    if (!attribute_ids.count(id)) {
      throw Error(ErrorKind::reference, "/failure_policy/drops_to_worst",
                  "failure policy names unknown attribute '" + id + "'");
    }
  }
}

ProblemDefinition parse_problem(const json& doc) {
  json_util::require_object(doc, "");
  ProblemDefinition p;

  const json& attributes = json_util::require_array(require(doc, "attributes", ""), "/attributes");
  for (std::size_t i = 0; i < attributes.size(); ++i) {
    p.attributes.push_back(parse_attribute(attributes[i], child("/attributes", i)));
  }
  const json& decisions = json_util::require_array(require(doc, "decisions", ""), "/decisions");
  for (std::size_t i = 0; i < decisions.size(); ++i) {
    p.decisions.push_back(parse_decision(decisions[i], child("/decisions", i)));
  }

  const json& hyper = require(doc, "hyperparameters", "");
  p.hyper.t_range = parse_interval(require(hyper, "t", "/hyperparameters"), "/hyperparameters/t");
  p.hyper.alpha_range = parse_interval(require(hyper, "alpha", "/hyperparameters"), "/hyperparameters/alpha");
  p.hyper.s = json_util::require_number(require(hyper, "s", "/hyperparameters"), "/hyperparameters/s");

  const json& evidence = require(doc, "evidence", "");
  p.evidence.observed = json_util::require_bool(require(evidence, "observed", "/evidence"), "/evidence/observed");

  const json& policy = require(doc, "failure_policy", "");
  const json& drops = json_util::require_array(require(policy, "drops_to_worst", "/failure_policy"),
                                               "/failure_policy/drops_to_worst");
  for (std::size_t i = 0; i < drops.size(); ++i) {
    auto id = json_util::require_string(drops[i], child("/failure_policy/drops_to_worst", i));
    if (!p.failure_policy.drops_to_worst.insert(id).second) {
      throw Error(ErrorKind::duplicate, "/failure_policy/drops_to_worst",
                  "failure policy lists '" + id + "' twice");
    }
  }

  validate(p);
  return p;
}

ProblemDefinition parse_problem_text(std::string_view text) {
  return parse_problem(json_util::parse_text(text, "problem"));
}

ProblemDefinition load_problem(const std::string& file) {
  return parse_problem(json_util::read_file(file));
}

json to_json(const ProblemDefinition& p) {
  json attributes = json::array();
  for (const auto& a : p.attributes) {
    json levels = json::array();
    for (const auto& l : a.levels) {
      levels.push_back({{"level", l.level}, {"short", l.short_text}, {"description", l.description}});
    }
    json entry = {{"id", a.id}, {"name", a.name}, {"levels", levels}};
    if (a.pair_excluded_levels) entry["pair_excluded_levels"] = *a.pair_excluded_levels;
    attributes.push_back(std::move(entry));
  }
  json decisions = json::array();
  for (const auto& d : p.decisions) {
    json scores = json::object();
    for (const auto& [k, v] : d.success_scores) scores[k] = v;
    decisions.push_back({{"id", d.id},
                         {"name", d.name},
                         {"success_scores", scores},
                         {"efficacy", {d.efficacy.lower, d.efficacy.upper}}});
  }
  return {
      {"attributes", attributes},
      {"decisions", decisions},
      {"hyperparameters",
       {{"t", {p.hyper.t_range.lower, p.hyper.t_range.upper}},
        {"alpha", {p.hyper.alpha_range.lower, p.hyper.alpha_range.upper}},
        {"s", p.hyper.s}}},
      {"evidence", {{"observed", p.evidence.observed}}},
      {"failure_policy", {{"drops_to_worst", p.failure_policy.drops_to_worst}}},
  };
}

ScoreMap failure_scores(const DecisionAlternative& d, const FailurePolicy& policy) {
  ScoreMap out = d.success_scores;
  for (const auto& id : policy.drops_to_worst) {
    if (auto it = out.find(id); it != out.end()) it->second = kWorstLevel;
  }
  return out;
}

std::vector<Level> excluded_pair_levels(const ProblemDefinition& p, std::size_t attribute) {
  const auto& a = p.attributes.at(attribute);
  if (a.pair_excluded_levels) {
    std::vector<Level> out = *a.pair_excluded_levels;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }
  if (p.failure_policy.drops_to_worst.count(a.id)) return {kBestLevel};
  return {};
}

}  // namespace rbda
