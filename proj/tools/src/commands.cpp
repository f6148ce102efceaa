#include "commands.hpp"

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <spdlog/sinks/ostream_sink.h>
#include <spdlog/spdlog.h>

#include "keysel/error.hpp"
#include "keysel/oracle_set.hpp"
#include "keysel/report.hpp"
#include "keysel/service.hpp"

namespace keysel::cli {

namespace fs = std::filesystem;

fs::path resolve_data_dir(const std::optional<std::string>& flag) {
  if (flag && !flag->empty()) return *flag;
  if (const char* env = std::getenv("KEYSEL_DATA_DIR"); env && *env) return env;
  return "keysel-data";
}

namespace {

int exit_code_for(const Error& e) {
  return e.code() == ErrorCode::kInvalidArgument ? kExitUsage : kExitData;
}

}  // namespace

int cmd_ingest(const IngestOptions& options, const fs::path& data_dir, std::ostream& out,
               std::ostream& err) {
  if (!fs::exists(options.input)) {
    err << "error: " << options.input.string() << ": no such file\n";
    return kExitData;
  }
  LoadResult loaded;
  try {
    loaded = load_jsonl(options.input, LoadOptions{.strict = options.strict});
  } catch (const Error& e) {
    err << "error: " << options.input.string() << ": " << e.what() << '\n';
    return kExitData;
  }
  CorpusRegistry registry(data_dir);
  registry.add(options.corpus_id, loaded.corpus);

  const Corpus& c = loaded.corpus;
  out << "corpus " << options.corpus_id << '\n'
      << "  tweets:     " << c.size() << '\n'
      << "  users:      " << c.user_count() << '\n'
      << "  hashtags:   " << c.hashtag_vocabulary_size() << '\n'
      << "  days:       " << c.days().size() << '\n'
      << "  duplicates: " << loaded.duplicates << '\n'
      << "  skipped:    " << loaded.skipped << '\n';
  for (const auto& e : loaded.errors) {
    err << options.input.string() << ":" << e.line << ": " << e.message << '\n';
  }
  if (loaded.skipped > 0) {
    err << "warning: " << loaded.skipped << " malformed line(s) skipped\n";
    return kExitData;
  }
  return kExitOk;
}

int cmd_synth(const SynthOptions& options, const fs::path& data_dir, std::ostream& out,
              std::ostream& err) {
  try {
    options.spec.validate();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  const auto synthetic = generate_synthetic(options.spec);
  std::error_code ec;
  fs::create_directories(options.output_dir, ec);
  if (ec) {
    err << "error: cannot create " << options.output_dir.string() << ": " << ec.message() << '\n';
    return kExitData;
  }
  const fs::path corpus_path = options.output_dir / "corpus.jsonl";
  write_jsonl(synthetic.corpus, corpus_path);
  out << "wrote " << corpus_path.string() << " (" << synthetic.corpus.size() << " tweets)\n";
  for (const auto& oracle : synthetic.oracles) {
    const fs::path p = options.output_dir / (oracle.topic_name + ".txt");
    write_oracle_file(oracle, p);
    out << "wrote " << p.string() << " (" << oracle.keywords.size() << " keywords)\n";
  }
  if (options.register_as) {
    CorpusRegistry(data_dir).add(*options.register_as, synthetic.corpus);
    out << "registered corpus " << *options.register_as << '\n';
  }
  return kExitOk;
}

namespace {

const std::set<std::string> kConfigKeys = {
    "corpus",     "corpus_id", "oracle",     "output_dir",          "methods",
    "budgets",    "days",      "seed_count", "replicates",          "graph_kind",
    "filter_oracle_daily",     "jobs",       "tfidf_aggregation",   "embedding"};

const std::set<std::string> kEmbeddingKeys = {"dim",    "window",        "negatives",
                                              "epochs", "learning_rate", "min_count"};

template <typename T>
std::optional<T> read_field(const nlohmann::json& doc, const std::string& key,
                            const char* type_name, std::vector<std::string>& problems) {
  auto it = doc.find(key);
  if (it == doc.end()) return std::nullopt;
  try {
    return it->get<T>();
  } catch (const nlohmann::json::exception&) {
    problems.push_back(key + ": expected " + type_name);
    return std::nullopt;
  }
}

}  // namespace

RunConfig parse_run_config(const nlohmann::json& doc, const fs::path& base,
                           std::vector<std::string>& problems) {
  RunConfig cfg;
  if (!doc.is_object()) {
    problems.push_back("config: expected a JSON object");
    return cfg;
  }
  for (const auto& [key, _] : doc.items()) {
    if (!kConfigKeys.count(key)) problems.push_back(key + ": unknown key");
  }
  auto resolve = [&](const std::string& p) { return fs::path(p).is_absolute() ? fs::path(p) : base / p; };

  const auto corpus = read_field<std::string>(doc, "corpus", "a path string", problems);
  cfg.corpus_id = read_field<std::string>(doc, "corpus_id", "a string", problems);
  if (corpus && cfg.corpus_id) {
    problems.push_back("corpus: give either corpus or corpus_id, not both");
  } else if (corpus) {
    cfg.corpus_path = resolve(*corpus);
  } else if (!cfg.corpus_id && !doc.contains("corpus") && !doc.contains("corpus_id")) {
    problems.push_back("corpus: required (path to a JSONL file, or corpus_id)");
  }

  if (const auto oracle = read_field<std::string>(doc, "oracle", "a path string", problems)) {
    cfg.oracle_path = resolve(*oracle);
  } else if (!doc.contains("oracle")) {
    problems.push_back("oracle: required");
  }
  if (const auto o = read_field<std::string>(doc, "output_dir", "a path string", problems)) {
    cfg.output_dir = resolve(*o);
  } else if (!doc.contains("output_dir")) {
    problems.push_back("output_dir: required");
  }

  auto& exp = cfg.experiment;
  exp.methods.clear();
  if (const auto names = read_field<std::vector<std::string>>(doc, "methods",
                                                              "a list of method names", problems)) {
    for (const auto& n : *names) {
      try {
        Method m;
        m.kind = parse_method(n);
        exp.methods.push_back(m);
      } catch (const Error& e) {
        problems.push_back(std::string("methods: ") + e.what());
      }
    }
    if (names->empty()) problems.push_back("methods: at least one method is required");
  } else if (!doc.contains("methods")) {
    problems.push_back("methods: required");
  }

  if (const auto b = read_field<std::vector<int>>(doc, "budgets", "a list of integers", problems)) {
    exp.budgets = *b;
    if (b->empty()) problems.push_back("budgets: at least one budget is required");
    for (int v : *b) {
      if (v < 1) problems.push_back("budgets: " + std::to_string(v) + " is not positive");
    }
  }
  if (const auto d = read_field<std::vector<int>>(doc, "days", "a [first, last] pair", problems)) {
    if (d->size() != 2) {
      problems.push_back("days: expected a [first, last] pair");
    } else if ((*d)[1] < (*d)[0]) {
      problems.push_back("days: last precedes first");
    } else {
      exp.days = DayRange{(*d)[0], (*d)[1]};
    }
  }
  if (const auto n = read_field<int>(doc, "seed_count", "an integer", problems)) {
    if (*n < 1) problems.push_back("seed_count: must be >= 1");
    else exp.seed_count = static_cast<std::size_t>(*n);
  }
  if (auto it = doc.find("replicates"); it != doc.end()) {
    if (it->is_number_unsigned() || (it->is_number_integer() && it->get<long long>() > 0)) {
      const auto n = it->get<std::uint64_t>();
      if (n == 0) problems.push_back("replicates: must be >= 1");
      exp.replicate_seeds.clear();
      for (std::uint64_t r = 0; r < n; ++r) exp.replicate_seeds.push_back(r);
    } else if (it->is_array()) {
      exp.replicate_seeds.clear();
      for (const auto& v : *it) {
        if (v.is_number_unsigned()) exp.replicate_seeds.push_back(v.get<std::uint64_t>());
        else problems.push_back("replicates: seeds must be non-negative integers");
      }
      if (it->empty()) problems.push_back("replicates: at least one seed is required");
      const std::set<std::uint64_t> unique(exp.replicate_seeds.begin(), exp.replicate_seeds.end());
      if (unique.size() != exp.replicate_seeds.size()) {
        problems.push_back("replicates: duplicate seeds");
      }
    } else {
      problems.push_back("replicates: expected a positive count or a list of seeds");
    }
  }
  if (const auto g = read_field<std::string>(doc, "graph_kind", "a string", problems)) {
    try {
      exp.graph_kind = parse_graph_kind(*g);
    } catch (const Error& e) {
      problems.push_back(std::string("graph_kind: ") + e.what());
    }
  }
  if (const auto f = read_field<bool>(doc, "filter_oracle_daily", "a boolean", problems)) {
    exp.filter_oracle_daily = *f;
  }
  if (const auto j = read_field<int>(doc, "jobs", "an integer", problems)) {
    if (*j < 1) problems.push_back("jobs: must be >= 1");
    else exp.jobs = static_cast<unsigned>(*j);
  }

  TfidfAggregation aggregation = TfidfAggregation::kSum;
  if (const auto a = read_field<std::string>(doc, "tfidf_aggregation", "a string", problems)) {
    if (*a == "max") aggregation = TfidfAggregation::kMax;
    else if (*a != "sum") problems.push_back("tfidf_aggregation: expected \"sum\" or \"max\"");
  }
  SkipGramParams embedding;
  if (auto it = doc.find("embedding"); it != doc.end()) {
    if (!it->is_object()) {
      problems.push_back("embedding: expected an object");
    } else {
      for (const auto& [key, _] : it->items()) {
        if (!kEmbeddingKeys.count(key)) problems.push_back("embedding." + key + ": unknown key");
      }
      auto int_param = [&](const char* key, int& field, int min) {
        if (auto v = read_field<int>(*it, key, "an integer", problems)) {
          if (*v < min) problems.push_back("embedding." + std::string(key) + ": must be >= " +
                                           std::to_string(min));
          else field = *v;
        }
      };
      int_param("dim", embedding.dim, 2);
      int_param("window", embedding.window, 1);
      int_param("negatives", embedding.negatives, 0);
      int_param("epochs", embedding.epochs, 1);
      int_param("min_count", embedding.min_count, 1);
      if (auto lr = read_field<double>(*it, "learning_rate", "a number", problems)) {
        if (!(*lr > 0)) problems.push_back("embedding.learning_rate: must be > 0");
        else embedding.learning_rate = *lr;
      }
    }
  }
  for (auto& m : exp.methods) {
    m.tfidf_aggregation = aggregation;
    m.embedding = embedding;
  }
  return cfg;
}

int cmd_run(const RunOptions& options, const fs::path& data_dir, std::ostream& out,
            std::ostream& err) {
  nlohmann::json doc;
  {
    std::ifstream in(options.config);
    if (!in) {
      err << "error: cannot open config " << options.config.string() << '\n';
      return kExitUsage;
    }
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
      err << "error: " << options.config.string() << ": invalid JSON: " << e.what() << '\n';
      return kExitUsage;
    }
  }

  std::vector<std::string> problems;
  RunConfig cfg = parse_run_config(doc, options.config.parent_path(), problems);
  if (options.jobs) {
    if (*options.jobs < 1) problems.push_back("--jobs: must be >= 1");
    cfg.experiment.jobs = *options.jobs;
  } else if (!doc.contains("jobs")) {
    cfg.experiment.jobs = std::max(1u, std::thread::hardware_concurrency());
  }

  std::optional<Corpus> corpus;
  std::optional<OracleSet> oracle;
  if (problems.empty()) {
    try {
      if (cfg.corpus_id) {
        corpus = *CorpusRegistry(data_dir).get(*cfg.corpus_id);
      } else {
        if (!fs::exists(cfg.corpus_path)) {
          throw Error(ErrorCode::kIo, cfg.corpus_path.string() + ": no such file");
        }
        corpus = load_jsonl(cfg.corpus_path, LoadOptions{.strict = true}).corpus;
      }
      if (!fs::exists(cfg.oracle_path)) {
        throw Error(ErrorCode::kIo, cfg.oracle_path.string() + ": no such file");
      }
      oracle = read_oracle_file(cfg.oracle_path);
    } catch (const Error& e) {
      err << "error: " << e.what() << '\n';
      return kExitData;
    }
    for (auto& p : cfg.experiment.validate(*corpus)) problems.push_back(std::move(p));
  }
  if (!problems.empty()) {
    err << "error: invalid config " << options.config.string() << ":\n";
    for (const auto& p : problems) err << "  " << p << '\n';
    return kExitUsage;
  }

  std::vector<MetricsRecord> records;
  try {
    spdlog::info("running {} method(s) x {} budget(s) x {} replicate(s) on {} jobs",
                 cfg.experiment.methods.size(), cfg.experiment.budgets.size(),
                 cfg.experiment.replicate_seeds.size(), cfg.experiment.jobs);
    records = run_experiment(*corpus, *oracle, cfg.experiment);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }

  std::error_code ec;
  fs::create_directories(cfg.output_dir, ec);
  if (ec) {
    err << "error: cannot create " << cfg.output_dir.string() << ": " << ec.message() << '\n';
    return kExitData;
  }
  const fs::path csv = cfg.output_dir / "results.csv";
  const fs::path summary = cfg.output_dir / "summary.json";
  {
    std::ofstream f(csv, std::ios::binary);
    write_results_csv(records, f);
    if (!f) {
      err << "error: cannot write " << csv.string() << '\n';
      return kExitData;
    }
  }
  {
    std::ofstream f(summary, std::ios::binary);
    f << summarize_json(records) << '\n';
    if (!f) {
      err << "error: cannot write " << summary.string() << '\n';
      return kExitData;
    }
  }
  out << "wrote " << csv.string() << " (" << records.size() << " rows)\n"
      << "wrote " << summary.string() << '\n';
  return kExitOk;
}

namespace {
std::atomic<bool> g_serving{false};
}

int cmd_serve(const ServeOptions& options, const fs::path& data_dir, std::ostream& out,
              std::ostream& err) {
  if (options.static_dir && !fs::is_directory(*options.static_dir)) {
    err << "error: static dir " << options.static_dir->string() << " does not exist\n";
    return kExitUsage;
  }
  CorpusRegistry registry(data_dir);
  SessionManager manager(registry, options.persist);
  try {
    if (options.persist) {
      const auto n = manager.restore();
      spdlog::info("restored {} session(s)", n);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }

  // Signals are handled on a dedicated thread; block them everywhere else.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  HttpService service(manager, options.static_dir);
  const int port = service.bind(options.host, options.port);
  if (port < 0) {
    err << "error: cannot bind " << options.host << ':' << options.port << '\n';
    return kExitData;
  }
  out << "listening on http://" << options.host << ':' << port << std::endl;

  g_serving = true;
  std::thread waiter([&] {
    const timespec tick{0, 200'000'000};
    while (g_serving) {
      if (sigtimedwait(&signals, nullptr, &tick) > 0) {
        spdlog::info("shutting down");
        service.stop();
        return;
      }
    }
  });
  const bool ok = service.serve();
  g_serving = false;
  waiter.join();
  return ok ? kExitOk : kExitData;
}

int cmd_report(const ReportOptions& options, std::ostream& out, std::ostream& err) {
  std::ifstream in(options.results);
  if (!in) {
    err << "error: cannot open " << options.results.string() << '\n';
    return kExitData;
  }
  std::vector<MetricsRecord> records;
  try {
    records = read_results_csv(in);
  } catch (const Error& e) {
    err << "error: " << options.results.string() << ": " << e.what() << '\n';
    return kExitData;
  }
  if (records.empty()) {
    err << "error: no data: " << options.results.string() << " has no result rows\n";
    return kExitData;
  }
  const auto summary = summarize(records);
  out << render_report_text(summary);
  if (options.json_out) {
    std::ofstream f(*options.json_out, std::ios::binary);
    f << render_report_json(summary) << '\n';
    if (!f) {
      err << "error: cannot write " << options.json_out->string() << '\n';
      return kExitData;
    }
  }
  return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Active keyword selection over tweet corpora", "keysel"};
  app.require_subcommand(1);

  std::optional<std::string> data_dir_flag;
  std::string log_level = "warn";
  app.add_option("--data-dir", data_dir_flag,
                 "Registry directory (default: $KEYSEL_DATA_DIR or ./keysel-data)");
  app.add_option("--log-level", log_level, "trace, debug, info, warn, error, off")
      ->check(CLI::IsMember({"trace", "debug", "info", "warn", "error", "critical", "off"}));

  IngestOptions ingest;
  auto* ingest_cmd = app.add_subcommand("ingest", "Register a JSONL corpus");
  ingest_cmd->add_option("path", ingest.input, "JSONL file")->required();
  ingest_cmd->add_option("--id", ingest.corpus_id, "Corpus id")->required();
  ingest_cmd->add_flag("--strict", ingest.strict, "Abort on the first malformed line");

  SynthOptions synth;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a planted-topic corpus");
  synth_cmd->add_option("--topics", synth.spec.num_topics)->capture_default_str();
  synth_cmd->add_option("--hashtags-per-topic", synth.spec.hashtags_per_topic)
      ->capture_default_str();
  synth_cmd->add_option("--background", synth.spec.background_hashtags)->capture_default_str();
  synth_cmd->add_option("--users", synth.spec.num_users)->capture_default_str();
  synth_cmd->add_option("--rate", synth.spec.tweets_per_user_per_day,
                        "Mean tweets per user per day")
      ->capture_default_str();
  synth_cmd->add_option("--days", synth.spec.num_days)->capture_default_str();
  synth_cmd->add_option("--homophily", synth.spec.homophily)->capture_default_str();
  synth_cmd->add_option("--hashtags-per-tweet", synth.spec.hashtags_per_tweet)
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.spec.rng_seed)->capture_default_str();
  synth_cmd->add_option("-o,--out", synth.output_dir, "Output directory")->required();
  synth_cmd->add_option("--register", synth.register_as, "Also register under this corpus id");

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "Run an experiment grid from a JSON config");
  run_cmd->add_option("config", run.config, "Config file")->required();
  run_cmd->add_option("-j,--jobs", run.jobs, "Parallel cells (default: all cores)");

  ServeOptions serve;
  bool no_persist = false;
  std::optional<std::string> static_dir;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the labeling HTTP API");
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("--port", serve.port, "0 picks a free port")
      ->check(CLI::Range(0, 65535))
      ->capture_default_str();
  serve_cmd->add_option("--static-dir", static_dir, "Directory of UI assets to serve at /");
  serve_cmd->add_flag("--no-persist", no_persist, "Keep sessions in memory only");

  ReportOptions report;
  std::optional<std::string> report_json;
  auto* report_cmd = app.add_subcommand("report", "Summarize a results CSV");
  report_cmd->add_option("results", report.results, "results.csv")->required();
  report_cmd->add_option("--json", report_json, "Also write the summary as JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto sink = std::make_shared<spdlog::sinks::ostream_sink_mt>(err);
  auto logger = std::make_shared<spdlog::logger>("keysel", sink);
  logger->set_pattern("[%l] %v");
  logger->set_level(spdlog::level::from_str(log_level));
  spdlog::set_default_logger(logger);

  const fs::path data_dir = resolve_data_dir(data_dir_flag);
  try {
    if (*ingest_cmd) return cmd_ingest(ingest, data_dir, out, err);
    if (*synth_cmd) return cmd_synth(synth, data_dir, out, err);
    if (*run_cmd) return cmd_run(run, data_dir, out, err);
    if (*serve_cmd) {
      if (static_dir) serve.static_dir = fs::path(*static_dir);
      serve.persist = !no_persist;
      return cmd_serve(serve, data_dir, out, err);
    }
    if (*report_cmd) {
      if (report_json) report.json_out = fs::path(*report_json);
      return cmd_report(report, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace keysel::cli
