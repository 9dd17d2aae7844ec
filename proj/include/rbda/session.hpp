#ifndef RBDA_SESSION_HPP
#define RBDA_SESSION_HPP

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "rbda/elicitation.hpp"
#include "rbda/problem.hpp"
#include "rbda/report.hpp"

namespace rbda {

/// Elicitation progress. Derived from the recorded inputs, so it can only
/// move forward by supplying the next input; editing an earlier input
/// discards the inputs that depended on it.
enum class Stage { levels, worst, brackets, complete };

std::string_view to_string(Stage stage);
Stage stage_of(const ProblemDefinition& problem, const ElicitationSession& elicitation);

struct Session {
  std::string id;
  ProblemDefinition problem;
  ElicitationSession elicitation;
  // Present only while stage == complete and consistent with the inputs.
  std::optional<Analysis> analysis;

  Stage stage() const { return stage_of(problem, elicitation); }
};

/// Sessions persisted as one JSON file each under a directory. Writes to a
/// session are serialized by a per-session mutex; every accepted write is
/// flushed to disk (write-then-rename) before the call returns, and unknown
/// ids are looked up on disk, so a restarted store sees every completed
/// stage.
class SessionStore {
 public:
  explicit SessionStore(std::filesystem::path directory);

  const std::filesystem::path& directory() const { return directory_; }

  nlohmann::json create(const ProblemDefinition& problem);
  nlohmann::json state(const std::string& id);
  nlohmann::json pairs(const std::string& id);
  nlohmann::json rewards(const std::string& id);
  nlohmann::json put_pairs(const std::string& id, const std::vector<LevelPair>& pairs);
  nlohmann::json put_worst(const std::string& id, const std::string& worst_choice);
  nlohmann::json put_statements(const std::string& id, const std::vector<PreferenceStatement>& statements);
  nlohmann::json put_notes(const std::string& id, const std::string& notes);
  nlohmann::json vertices(const std::string& id);

  /// Canonical report text (identical to `rbda analyze` output), or a JSON
  /// body with polytope_empty = true when the brackets are inconsistent.
  std::string report(const std::string& id);
  nlohmann::json export_session(const std::string& id);
  std::vector<std::string> list() const;

 private:
  struct Entry {
    std::mutex mutex;
    Session session;
  };

  std::shared_ptr<Entry> find(const std::string& id);
  void persist(const Session& session) const;
  std::filesystem::path file_for(const std::string& id) const;
  nlohmann::json write_response(Session& session);

  std::filesystem::path directory_;
  mutable std::mutex map_mutex_;
  std::map<std::string, std::shared_ptr<Entry>> entries_;
};

std::vector<LevelPair> parse_pairs(const nlohmann::json& body);
std::vector<PreferenceStatement> parse_statements(const nlohmann::json& body);

}  // namespace rbda

#endif  // RBDA_SESSION_HPP
