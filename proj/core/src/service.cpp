#include "keysel/service.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <random>

#include <httplib.h>

#include "keysel/metrics.hpp"

namespace keysel {

namespace fs = std::filesystem;

bool valid_identifier(const std::string& id) {
  if (id.empty() || id.size() > 128) return false;
  for (char c : id) {
    const bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                    c == '-' || c == '_' || c == '.';
    if (!ok) return false;
  }
  return id.front() != '.';
}

CorpusRegistry::CorpusRegistry(fs::path data_dir) : data_dir_(std::move(data_dir)) {}

fs::path CorpusRegistry::path_of(const std::string& corpus_id) const {
  return data_dir_ / "corpora" / (corpus_id + ".jsonl");
}

void CorpusRegistry::add(const std::string& corpus_id, const Corpus& corpus) {
  if (!valid_identifier(corpus_id)) {
    throw Error(ErrorCode::kInvalidArgument, "invalid corpus id '" + corpus_id + "'");
  }
  std::error_code ec;
  fs::create_directories(data_dir_ / "corpora", ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + (data_dir_ / "corpora").string());
  write_jsonl(corpus, path_of(corpus_id));
  std::lock_guard lock(mutex_);
  cache_.erase(corpus_id);
}

std::vector<std::string> CorpusRegistry::ids() const {
  std::vector<std::string> out;
  std::error_code ec;
  for (const auto& entry : fs::directory_iterator(data_dir_ / "corpora", ec)) {
    if (entry.path().extension() == ".jsonl") out.push_back(entry.path().stem().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool CorpusRegistry::contains(const std::string& corpus_id) const {
  return valid_identifier(corpus_id) && fs::exists(path_of(corpus_id));
}

std::shared_ptr<const Corpus> CorpusRegistry::get(const std::string& corpus_id) const {
  std::lock_guard lock(mutex_);
  if (auto it = cache_.find(corpus_id); it != cache_.end()) return it->second;
  if (!contains(corpus_id)) {
    throw Error(ErrorCode::kNotFound, "unknown corpus '" + corpus_id + "'");
  }
  auto corpus = std::make_shared<const Corpus>(
      load_jsonl(path_of(corpus_id), LoadOptions{.strict = true}).corpus);
  cache_[corpus_id] = corpus;
  return corpus;
}

const char* to_string(SessionStatus status) {
  switch (status) {
    case SessionStatus::kActive: return "active";
    case SessionStatus::kExhausted: return "exhausted";
    case SessionStatus::kClosed: return "closed";
  }
  return "unknown";
}

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return 422;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kConflict: return 409;
    case ErrorCode::kData: return 422;
    case ErrorCode::kIo: return 500;
  }
  return 500;
}

CreateSessionRequest CreateSessionRequest::from_json(const nlohmann::json& body) {
  auto invalid = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (!body.is_object()) invalid("request body must be a JSON object");
  CreateSessionRequest req;
  try {
    req.corpus_id = body.at("corpus_id").get<std::string>();
    for (const auto& s : body.value("seeds", nlohmann::json::array())) {
      std::string tag = normalize_hashtag(s.get<std::string>());
      if (!tag.empty() &&
          std::find(req.seeds.begin(), req.seeds.end(), tag) == req.seeds.end()) {
        req.seeds.push_back(std::move(tag));
      }
    }
    req.method.kind = parse_method(body.value("method", std::string("keyselect")));
    req.method.rng_seed = body.value("rng_seed", std::uint64_t{0});
    req.method.embedding.rng_seed = req.method.rng_seed;
    req.graph_kind = parse_graph_kind(body.value("graph_kind", std::string("user_hashtag")));
    if (auto it = body.find("day_range"); it != body.end() && !it->is_null()) {
      if (it->is_array() && it->size() == 2) {
        req.day_range = DayRange{(*it)[0].get<int>(), (*it)[1].get<int>()};
      } else {
        req.day_range = DayRange{it->at("first").get<int>(), it->at("last").get<int>()};
      }
      if (req.day_range->empty()) invalid("day_range is empty");
    }
    if (auto it = body.find("oracle"); it != body.end() && !it->is_null()) {
      std::set<std::string> oracle;
      for (const auto& k : *it) {
        std::string tag = normalize_hashtag(k.get<std::string>());
        if (!tag.empty()) oracle.insert(std::move(tag));
      }
      req.oracle = std::move(oracle);
    }
    req.strict = body.value("strict", false);
  } catch (const nlohmann::json::exception& e) {
    invalid(std::string("malformed session request: ") + e.what());
  }
  if (req.seeds.empty()) invalid("seeds must contain at least one hashtag");
  return req;
}

nlohmann::json CreateSessionRequest::to_json() const {
  nlohmann::ordered_json j;
  j["corpus_id"] = corpus_id;
  j["seeds"] = seeds;
  j["method"] = to_string(method.kind);
  j["rng_seed"] = method.rng_seed;
  j["graph_kind"] = to_string(graph_kind);
  j["day_range"] = day_range ? nlohmann::json::array({day_range->first, day_range->last})
                             : nlohmann::json(nullptr);
  j["oracle"] = oracle ? nlohmann::json(*oracle) : nlohmann::json(nullptr);
  j["strict"] = strict;
  return j;
}

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace

SessionManager::SessionManager(const CorpusRegistry& registry, bool persist)
    : registry_(registry), persist_(persist), id_salt_(std::random_device{}()) {
  id_salt_ = (id_salt_ << 32) ^ std::random_device{}();
}

fs::path SessionManager::log_path(const std::string& session_id) const {
  return registry_.data_dir() / "sessions" / (session_id + ".jsonl");
}

std::string SessionManager::fresh_id() {
  for (;;) {
    std::uint64_t z = id_salt_ + 0x9E3779B97F4A7C15ULL * ++id_counter_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    char buf[24];
    std::snprintf(buf, sizeof buf, "s%016llx", static_cast<unsigned long long>(z));
    std::string id = buf;
    if (!sessions_.count(id) && !(persist_ && fs::exists(log_path(id)))) return id;
  }
}

void SessionManager::append_event(const std::string& session_id,
                                  const nlohmann::json& event) const {
  if (!persist_) return;
  std::error_code ec;
  fs::create_directories(log_path(session_id).parent_path(), ec);
  std::ofstream out(log_path(session_id), std::ios::app);
  if (!out) throw Error(ErrorCode::kIo, "cannot append to " + log_path(session_id).string());
  out << event.dump() << '\n';
  out.flush();
}

std::shared_ptr<SessionManager::Entry> SessionManager::build(std::string id,
                                                             CreateSessionRequest request,
                                                             std::string created_at) const {
  auto entry = std::make_shared<Entry>();
  entry->id = std::move(id);
  entry->corpus = registry_.get(request.corpus_id);
  entry->created_at = std::move(created_at);

  const Corpus& corpus = *entry->corpus;
  DayRange range = request.day_range.value_or(
      corpus.empty() ? DayRange{0, 0} : DayRange{corpus.days().front(), corpus.days().back()});
  SelectionInputs inputs;
  inputs.window = corpus.slice(range);
  inputs.graph = std::make_shared<const BipartiteGraph>(
      build_graph(std::span<const Tweet* const>(inputs.window), request.graph_kind));
  const std::set<std::string> seeds(request.seeds.begin(), request.seeds.end());
  entry->session.emplace(SelectionSession::init(std::move(inputs), seeds, request.method));
  if (entry->session->candidate_count() == 0) entry->status = SessionStatus::kExhausted;
  entry->request = std::move(request);
  return entry;
}

nlohmann::json SessionManager::create(const CreateSessionRequest& request) {
  if (request.seeds.empty()) {
    throw Error(ErrorCode::kInvalidArgument, "seeds must contain at least one hashtag");
  }
  std::string id;
  {
    std::lock_guard lock(mutex_);
    id = fresh_id();
  }
  auto entry = build(id, request, utc_now());
  append_event(id, {{"event", "create"},
                    {"session_id", id},
                    {"created_at", entry->created_at},
                    {"request", request.to_json()}});
  const auto count = entry->session->candidate_count();
  {
    std::lock_guard lock(mutex_);
    sessions_[id] = std::move(entry);
  }
  return {{"session_id", id}, {"candidate_count", count}};
}

std::shared_ptr<SessionManager::Entry> SessionManager::find(const std::string& session_id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(session_id);
  if (it == sessions_.end()) {
    throw Error(ErrorCode::kNotFound, "unknown session '" + session_id + "'");
  }
  return it->second;
}

nlohmann::json SessionManager::next(const std::string& session_id) {
  auto entry = find(session_id);
  std::shared_lock lock(entry->mutex);
  if (entry->status == SessionStatus::kClosed) {
    throw Error(ErrorCode::kConflict, "session '" + session_id + "' is closed");
  }
  const auto suggestion = entry->session->suggest_next();
  if (!suggestion) return {{"status", "exhausted"}};
  return {{"hashtag", suggestion->hashtag},
          {"score", suggestion->score},
          {"frequency", suggestion->frequency},
          {"positive_cooccurrence", suggestion->positive_cooccurrence},
          {"sample_tweets", suggestion->sample_tweets}};
}

void SessionManager::label_locked(Entry& entry, const std::string& hashtag, bool positive) {
  if (entry.status == SessionStatus::kClosed) {
    throw Error(ErrorCode::kConflict, "session '" + entry.id + "' is closed");
  }
  if (auto current = entry.session->labels().label_of(hashtag)) {
    throw LabelConflict(hashtag, *current);
  }
  if (entry.request.strict) {
    const auto top = entry.session->queue().peek();
    if (!top || top->hashtag != hashtag) {
      throw Error(ErrorCode::kInvalidArgument,
                  "strict session: only the current candidate can be labeled");
    }
  }
  entry.session->apply_label(hashtag, positive, 1, entry.session->labels().history().empty()
                                                       ? 0
                                                       : entry.session->labels().history().back().day);
  if (entry.session->candidate_count() == 0) entry.status = SessionStatus::kExhausted;
}

nlohmann::json SessionManager::submit_label(const std::string& session_id,
                                            const std::string& raw_hashtag, bool positive) {
  const std::string hashtag = normalize_hashtag(raw_hashtag);
  auto entry = find(session_id);
  std::unique_lock lock(entry->mutex);
  label_locked(*entry, hashtag, positive);
  append_event(session_id, {{"event", "label"},
                            {"hashtag", hashtag},
                            {"label", positive ? "positive" : "negative"}});

  nlohmann::json recall_value = nullptr;
  if (entry->request.oracle) {
    try {
      recall_value = recall(entry->session->labels(),
                            OracleSet{"session", *entry->request.oracle});
    } catch (const Error&) {
      // oracle fully covered by seeds: recall undefined
    }
  }
  return {{"accepted", true},
          {"new_candidate_count", entry->session->candidate_count()},
          {"recall_if_oracle_attached", recall_value}};
}

nlohmann::json SessionManager::describe(const std::string& session_id) const {
  auto entry = find(session_id);
  std::shared_lock lock(entry->mutex);
  const auto& labels = entry->session->labels();
  return {{"session_id", entry->id},
          {"corpus_id", entry->request.corpus_id},
          {"method", to_string(entry->request.method.kind)},
          {"graph_kind", to_string(entry->request.graph_kind)},
          {"status", to_string(entry->status)},
          {"created_at", entry->created_at},
          {"strict", entry->request.strict},
          {"seeds", labels.seeds().size()},
          {"positives", labels.positives().size()},
          {"negatives", labels.negatives().size()},
          {"remaining", entry->session->candidate_count()}};
}

std::string SessionManager::export_session(const std::string& session_id) const {
  auto entry = find(session_id);
  std::shared_lock lock(entry->mutex);
  return entry->session->labels().to_json();
}

void SessionManager::close(const std::string& session_id) {
  auto entry = find(session_id);
  std::unique_lock lock(entry->mutex);
  if (entry->status == SessionStatus::kClosed) return;
  entry->status = SessionStatus::kClosed;
  append_event(session_id, {{"event", "close"}});
}

nlohmann::json SessionManager::list_corpora() const {
  auto out = nlohmann::json::array();
  for (const auto& id : registry_.ids()) out.push_back({{"corpus_id", id}});
  return out;
}

std::size_t SessionManager::restore() {
  const fs::path dir = registry_.data_dir() / "sessions";
  std::error_code ec;
  if (!fs::exists(dir, ec)) return 0;
  std::vector<fs::path> logs;
  for (const auto& e : fs::directory_iterator(dir)) {
    if (e.path().extension() == ".jsonl") logs.push_back(e.path());
  }
  std::sort(logs.begin(), logs.end());

  std::size_t restored = 0;
  for (const auto& path : logs) {
    std::ifstream in(path);
    std::string line;
    std::shared_ptr<Entry> entry;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      try {
        const auto event = nlohmann::json::parse(line);
        const auto kind = event.at("event").get<std::string>();
        if (kind == "create") {
          entry = build(event.at("session_id").get<std::string>(),
                        CreateSessionRequest::from_json(event.at("request")),
                        event.at("created_at").get<std::string>());
        } else if (!entry) {
          throw Error(ErrorCode::kData, "event before create");
        } else if (kind == "label") {
          label_locked(*entry, event.at("hashtag").get<std::string>(),
                       event.at("label").get<std::string>() == "positive");
        } else if (kind == "close") {
          entry->status = SessionStatus::kClosed;
        }
      } catch (const std::exception& e) {
        throw Error(ErrorCode::kData, path.string() + ":" + std::to_string(line_no) + ": " +
                                          e.what());
      }
    }
    if (entry) {
      std::lock_guard lock(mutex_);
      sessions_[entry->id] = entry;
      ++restored;
    }
  }
  return restored;
}

struct HttpService::Impl {
  SessionManager& manager;
  httplib::Server server;

  explicit Impl(SessionManager& m) : manager(m) {}
};

namespace {

void send_json(httplib::Response& res, const nlohmann::json& body, int status = 200) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code,
                const std::string& message, nlohmann::json extra = nlohmann::json::object()) {
  extra["code"] = code;
  extra["message"] = message;
  send_json(res, extra, status);
}

template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const LabelConflict& e) {
      send_error(res, 409, to_string(e.code()), e.what(),
                 {{"current_label", e.current_label() ? "positive" : "negative"}});
    } catch (const Error& e) {
      send_error(res, http_status(e.code()), to_string(e.code()), e.what());
    } catch (const nlohmann::json::exception& e) {
      send_error(res, 400, "bad_request", e.what());
    } catch (const std::exception& e) {
      send_error(res, 500, "internal", e.what());
    }
  };
}

nlohmann::json parse_body(const httplib::Request& req) {
  return nlohmann::json::parse(req.body);  // parse errors map to 400
}

}  // namespace

HttpService::HttpService(SessionManager& manager, std::optional<fs::path> static_dir)
    : impl_(std::make_unique<Impl>(manager)) {
  auto& s = impl_->server;
  auto& m = impl_->manager;

  s.Post("/v1/sessions", guarded([&m](const auto& req, auto& res) {
    send_json(res, m.create(CreateSessionRequest::from_json(parse_body(req))), 201);
  }));
  s.Get("/v1/sessions/:id/next", guarded([&m](const auto& req, auto& res) {
    send_json(res, m.next(req.path_params.at("id")));
  }));
  s.Post("/v1/sessions/:id/labels", guarded([&m](const auto& req, auto& res) {
    const auto body = parse_body(req);
    const auto label = body.at("label").template get<std::string>();
    if (label != "positive" && label != "negative") {
      throw Error(ErrorCode::kInvalidArgument, "label must be 'positive' or 'negative'");
    }
    send_json(res, m.submit_label(req.path_params.at("id"),
                                  body.at("hashtag").template get<std::string>(),
                                  label == "positive"));
  }));
  s.Get("/v1/sessions/:id", guarded([&m](const auto& req, auto& res) {
    send_json(res, m.describe(req.path_params.at("id")));
  }));
  s.Get("/v1/sessions/:id/export", guarded([&m](const auto& req, auto& res) {
    res.set_content(m.export_session(req.path_params.at("id")), "application/json");
  }));
  s.Post("/v1/sessions/:id/close", guarded([&m](const auto& req, auto& res) {
    m.close(req.path_params.at("id"));
    send_json(res, {{"status", "closed"}});
  }));
  s.Get("/v1/corpora", guarded([&m](const auto&, auto& res) { send_json(res, m.list_corpora()); }));

  if (static_dir) s.set_mount_point("/", static_dir->string());
}

HttpService::~HttpService() { stop(); }

bool HttpService::listen(const std::string& host, int port) {
  return bind(host, port) >= 0 && serve();
}

int HttpService::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpService::serve() { return impl_->server.listen_after_bind(); }

void HttpService::stop() {
  if (impl_) impl_->server.stop();
}

void HttpService::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace keysel
