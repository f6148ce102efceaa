#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "keysel/corpus.hpp"
#include "keysel/error.hpp"
#include "keysel/graph.hpp"
#include "keysel/method.hpp"
#include "keysel/oracle_set.hpp"
#include "keysel/session.hpp"

namespace keysel {

/// Corpora registered under an id in <data_dir>/corpora/<id>.jsonl.
class CorpusRegistry {
 public:
  explicit CorpusRegistry(std::filesystem::path data_dir);

  /// Stores the corpus under the id, replacing any previous one.
  void add(const std::string& corpus_id, const Corpus& corpus);
  std::vector<std::string> ids() const;
  bool contains(const std::string& corpus_id) const;
  /// Throws Error(kNotFound) for unknown ids.
  std::shared_ptr<const Corpus> get(const std::string& corpus_id) const;

  const std::filesystem::path& data_dir() const { return data_dir_; }

 private:
  std::filesystem::path path_of(const std::string& corpus_id) const;

  std::filesystem::path data_dir_;
  mutable std::mutex mutex_;
  mutable std::map<std::string, std::shared_ptr<const Corpus>> cache_;
};

/// Checks that an id is safe to use as a file name.
bool valid_identifier(const std::string& id);

enum class SessionStatus { kActive, kExhausted, kClosed };
const char* to_string(SessionStatus status);

struct CreateSessionRequest {
  std::string corpus_id;
  std::vector<std::string> seeds;
  Method method;
  GraphKind graph_kind = GraphKind::kUserHashtag;
  std::optional<DayRange> day_range;
  std::optional<std::set<std::string>> oracle;  // enables recall reporting
  bool strict = false;  // only the current top candidate may be labeled

  /// Parses the POST /v1/sessions body. Throws Error(kInvalidArgument).
  static CreateSessionRequest from_json(const nlohmann::json& body);
  nlohmann::json to_json() const;
};

/// Labeling refused because the hashtag already has a label.
class LabelConflict : public Error {
 public:
  LabelConflict(const std::string& hashtag, bool positive)
      : Error(ErrorCode::kConflict,
              "hashtag '" + hashtag + "' already labeled " + (positive ? "positive" : "negative")),
        positive_(positive) {}
  bool current_label() const { return positive_; }

 private:
  bool positive_;
};

/// All interactive sessions. Thread-safe: sessions are independent and each
/// one serializes its label mutations behind a reader/writer lock.
///
/// With persistence, every session keeps an append-only event log in
/// <data_dir>/sessions/<id>.jsonl and restore() rebuilds state by replay.
class SessionManager {
 public:
  explicit SessionManager(const CorpusRegistry& registry, bool persist = false);

  /// Replays every session log under the data directory.
  /// Returns the number of sessions restored.
  std::size_t restore();

  nlohmann::json create(const CreateSessionRequest& request);
  /// {hashtag, score, frequency, positive_cooccurrence, sample_tweets} or
  /// {status: "exhausted"}.
  nlohmann::json next(const std::string& session_id);
  /// {accepted, new_candidate_count, recall_if_oracle_attached}
  nlohmann::json submit_label(const std::string& session_id, const std::string& hashtag,
                              bool positive);
  nlohmann::json describe(const std::string& session_id) const;
  std::string export_session(const std::string& session_id) const;
  void close(const std::string& session_id);
  nlohmann::json list_corpora() const;

 private:
  struct Entry {
    std::string id;
    CreateSessionRequest request;
    std::shared_ptr<const Corpus> corpus;
    std::optional<SelectionSession> session;
    SessionStatus status = SessionStatus::kActive;
    std::string created_at;
    mutable std::shared_mutex mutex;
  };

  std::shared_ptr<Entry> find(const std::string& session_id) const;
  std::shared_ptr<Entry> build(std::string id, CreateSessionRequest request,
                               std::string created_at) const;
  void label_locked(Entry& entry, const std::string& hashtag, bool positive);
  void append_event(const std::string& session_id, const nlohmann::json& event) const;
  std::filesystem::path log_path(const std::string& session_id) const;
  std::string fresh_id();

  const CorpusRegistry& registry_;
  bool persist_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::uint64_t id_counter_ = 0;
  std::uint64_t id_salt_;
};

/// JSON-over-HTTP front end for a SessionManager.
class HttpService {
 public:
  explicit HttpService(SessionManager& manager,
                       std::optional<std::filesystem::path> static_dir = std::nullopt);
  ~HttpService();

  /// Binds and serves until stop(). Port 0 picks a free port.
  bool listen(const std::string& host, int port);
  /// Binds without serving; returns the bound port or -1.
  int bind(const std::string& host, int port);
  /// Serves on a socket set up by bind().
  bool serve();
  void stop();
  /// Blocks until the server accepts connections.
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// HTTP status for an error class.
int http_status(ErrorCode code);

}  // namespace keysel
