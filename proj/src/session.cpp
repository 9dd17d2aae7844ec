#include "rbda/session.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <cctype>
#include <random>

#include "rbda/error.hpp"
#include "rbda/json_util.hpp"

namespace rbda {

namespace fs = std::filesystem;
using json_util::child;
using json_util::require;
using nlohmann::json;

namespace {

std::string now_utc() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string new_id() {
  std::random_device rd;
  std::string out;
  char buf[9];
  for (int i = 0; i < 4; ++i) {
    std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(rd()));
    out += buf;
  }
  return out;
}

bool valid_id(const std::string& id) {
  return !id.empty() && id.size() <= 64 &&
         std::all_of(id.begin(), id.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); });
}

[[noreturn]] void stage_error(Stage have, const std::string& need) {
  throw Error(ErrorKind::stage, std::string(to_string(have)),
              "session is at stage '" + std::string(to_string(have)) + "'; " + need);
}

void touch(Session& s) {
  if (!s.elicitation.provenance.contains("created")) s.elicitation.provenance["created"] = now_utc();
  s.elicitation.provenance["updated"] = now_utc();
}

void refresh_analysis(Session& s) {
  if (s.stage() != Stage::complete) {
    s.analysis.reset();
    return;
  }
  if (!s.analysis) s.analysis = run_analysis(s.problem, s.elicitation);
}

json derived_json(const Session& s) {
  if (!s.analysis) return json::object();
  const Analysis& a = *s.analysis;
  json out = {{"vertices", vertices_json(a.polytope)}, {"polytope_empty", a.polytope.empty()}};
  if (a.report) {
    out["report"] = json::parse(report_text(s.problem, *a.report, a.digest));
  } else {
    out["inconsistency"] = a.inconsistency;
  }
  return out;
}

}  // namespace

std::string_view to_string(Stage stage) {
  switch (stage) {
    case Stage::levels: return "levels";
    case Stage::worst: return "worst";
    case Stage::brackets: return "brackets";
    case Stage::complete: return "complete";
  }
  return "unknown";
}

Stage stage_of(const ProblemDefinition& problem, const ElicitationSession& e) {
  if (e.pairs.empty()) return Stage::levels;
  if (!e.worst_choice) return Stage::worst;
  for (const auto& a : problem.attributes) {
    if (a.id == *e.worst_choice) continue;
    const bool covered = std::any_of(e.statements.begin(), e.statements.end(),
                                     [&](const PreferenceStatement& s) { return s.attribute_id == a.id; });
    if (!covered) return Stage::brackets;
  }
  return Stage::complete;
}

std::vector<LevelPair> parse_pairs(const json& body) {
  const json& arr = json_util::require_array(body.is_object() ? require(body, "pairs", "") : body, "/pairs");
  std::vector<LevelPair> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = child("/pairs", i);
    out.push_back({json_util::require_string(require(arr[i], "attribute", p), child(p, "attribute")),
                   json_util::require_integer(require(arr[i], "low", p), child(p, "low")),
                   json_util::require_integer(require(arr[i], "high", p), child(p, "high"))});
  }
  return out;
}

std::vector<PreferenceStatement> parse_statements(const json& body) {
  const json& arr =
      json_util::require_array(body.is_object() ? require(body, "statements", "") : body, "/statements");
  std::vector<PreferenceStatement> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string p = child("/statements", i);
    out.push_back({json_util::require_string(require(arr[i], "attribute", p), child(p, "attribute")),
                   json_util::require_number(require(arr[i], "alpha_lower", p), child(p, "alpha_lower")),
                   json_util::require_number(require(arr[i], "alpha_upper", p), child(p, "alpha_upper"))});
  }
  return out;
}

SessionStore::SessionStore(fs::path directory) : directory_(std::move(directory)) {
  std::error_code ec;
  fs::create_directories(directory_, ec);
  if (ec) throw Error(ErrorKind::io, directory_.string(), "cannot create session directory: " + ec.message());
}

fs::path SessionStore::file_for(const std::string& id) const { return directory_ / (id + ".json"); }

void SessionStore::persist(const Session& s) const {
  json doc = {{"id", s.id},
              {"stage", to_string(s.stage())},
              {"problem", to_json(s.problem)},
              {"elicitation", s.elicitation.to_json()}};
  json_util::write_file_atomic(file_for(s.id).string(), json_util::canonical_dump(doc));
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) {
  if (!valid_id(id)) throw Error(ErrorKind::not_found, id, "unknown session '" + id + "'");
  std::lock_guard lock(map_mutex_);
  if (auto it = entries_.find(id); it != entries_.end()) return it->second;
  const fs::path file = file_for(id);
  if (!fs::exists(file)) throw Error(ErrorKind::not_found, id, "unknown session '" + id + "'");
  const json doc = json_util::read_file(file.string());
  auto entry = std::make_shared<Entry>();
  entry->session.id = id;
  entry->session.problem = parse_problem(require(doc, "problem", ""));
  entry->session.elicitation = parse_session(require(doc, "elicitation", ""));
  entries_.emplace(id, entry);
  return entry;
}

json SessionStore::write_response(Session& s) {
  refresh_analysis(s);
  return {{"id", s.id},
          {"stage", to_string(s.stage())},
          {"session", s.elicitation.to_json()},
          {"derived", derived_json(s)}};
}

json SessionStore::create(const ProblemDefinition& problem) {
  validate(problem);
  auto entry = std::make_shared<Entry>();
  std::string id;
  {
    std::lock_guard lock(map_mutex_);
    do {
      id = new_id();
    } while (entries_.count(id) || fs::exists(file_for(id)));
    entries_.emplace(id, entry);
  }
  std::lock_guard lock(entry->mutex);
  entry->session.id = id;
  entry->session.problem = problem;
  touch(entry->session);
  persist(entry->session);
  return write_response(entry->session);
}

json SessionStore::state(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  json out = write_response(entry->session);
  out["problem"] = to_json(entry->session.problem);
  return out;
}

json SessionStore::pairs(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  const Session& s = entry->session;
  json options = json::array();
  for (std::size_t i = 0; i < s.problem.attributes.size(); ++i) {
    options.push_back({{"attribute", s.problem.attributes[i].id},
                       {"excluded_levels", excluded_pair_levels(s.problem, i)}});
  }
  return {{"id", s.id},
          {"stage", to_string(s.stage())},
          {"pairs", s.elicitation.content_json()["pairs"]},
          {"options", options}};
}

json SessionStore::rewards(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  const Session& s = entry->session;
  if (s.stage() == Stage::levels) stage_error(s.stage(), "level pairs are required first");
  const std::string worst = s.elicitation.worst_choice.value_or(s.problem.attributes.front().id);
  const SwingRewardSet r = build_rewards(s.problem, s.elicitation.pairs, worst);
  json swings = json::array();
  for (std::size_t i = 0; i < r.swings.size(); ++i) {
    swings.push_back({{"attribute", r.attribute_ids[i]}, {"reward", r.swings[i]}});
  }
  json out = {{"id", s.id}, {"stage", to_string(s.stage())}, {"reference", r.reference}, {"swings", swings}};
  if (s.elicitation.worst_choice) out["ordering_premise"] = r.ordering_premise();
  return out;
}

json SessionStore::put_pairs(const std::string& id, const std::vector<LevelPair>& pairs) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  Session& s = entry->session;
  build_rewards(s.problem, pairs, s.problem.attributes.front().id);  // validation only
  if (pairs != s.elicitation.pairs) {
    s.elicitation.pairs = pairs;
    s.elicitation.worst_choice.reset();
    s.elicitation.statements.clear();
    s.analysis.reset();
  }
  touch(s);
  persist(s);
  return write_response(s);
}

json SessionStore::put_worst(const std::string& id, const std::string& worst_choice) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  Session& s = entry->session;
  if (s.stage() == Stage::levels) stage_error(s.stage(), "level pairs are required before the worst swing");
  build_rewards(s.problem, s.elicitation.pairs, worst_choice);  // validation only
  if (s.elicitation.worst_choice != worst_choice) {
    s.elicitation.worst_choice = worst_choice;
    s.elicitation.statements.clear();
    s.analysis.reset();
  }
  touch(s);
  persist(s);
  return write_response(s);
}

json SessionStore::put_statements(const std::string& id, const std::vector<PreferenceStatement>& statements) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  Session& s = entry->session;
  if (s.stage() == Stage::levels || s.stage() == Stage::worst) {
    stage_error(s.stage(), "the worst swing must be chosen before bracketing");
  }
  for (const auto& st : statements) {
    validate_statement(st);
    s.problem.attribute_index(st.attribute_id);
    if (st.attribute_id == *s.elicitation.worst_choice) {
      throw Error(ErrorKind::invariant, "PreferenceStatement",
                  "PreferenceStatement: the worst swing '" + st.attribute_id + "' takes no bracket");
    }
  }
  std::vector<PreferenceStatement> merged = s.elicitation.statements;
  merge_statements(merged, statements);
  // Keep statements in attribute order so exports are stable.
  std::stable_sort(merged.begin(), merged.end(), [&](const auto& a, const auto& b) {
    return s.problem.attribute_index(a.attribute_id) < s.problem.attribute_index(b.attribute_id);
  });
  if (merged != s.elicitation.statements) {
    s.elicitation.statements = std::move(merged);
    s.analysis.reset();
  }
  touch(s);
  persist(s);
  return write_response(s);
}

json SessionStore::put_notes(const std::string& id, const std::string& notes) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  Session& s = entry->session;
  s.elicitation.provenance["notes"] = notes;
  touch(s);
  persist(s);
  return write_response(s);
}

json SessionStore::vertices(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  Session& s = entry->session;
  if (s.stage() != Stage::complete) stage_error(s.stage(), "every bracket is required before weights exist");
  refresh_analysis(s);
  json out = {{"id", s.id},
              {"vertices", vertices_json(s.analysis->polytope)},
              {"polytope_empty", s.analysis->polytope.empty()}};
  if (s.analysis->polytope.empty()) out["inconsistency"] = s.analysis->inconsistency;
  return out;
}

std::string SessionStore::report(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  Session& s = entry->session;
  if (s.stage() != Stage::complete) stage_error(s.stage(), "every bracket is required before a report exists");
  refresh_analysis(s);
  if (!s.analysis->report) {
    return json_util::canonical_dump(
        {{"id", s.id}, {"polytope_empty", true}, {"inconsistency", s.analysis->inconsistency}});
  }
  return report_text(s.problem, *s.analysis->report, s.analysis->digest);
}

json SessionStore::export_session(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mutex);
  return entry->session.elicitation.to_json();
}

std::vector<std::string> SessionStore::list() const {
  std::vector<std::string> out;
  for (const auto& f : fs::directory_iterator(directory_)) {
    if (f.path().extension() == ".json") out.push_back(f.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace rbda
