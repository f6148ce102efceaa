#include "keysel/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>
#include <tuple>

#include <nlohmann/json.hpp>

#include "keysel/error.hpp"
#include "keysel/metrics.hpp"
#include "keysel/report.hpp"
#include "keysel/session.hpp"

namespace keysel {

std::vector<std::string> ExperimentConfig::validate(const Corpus& corpus) const {
  std::vector<std::string> problems;
  if (methods.empty()) problems.push_back("methods: at least one method is required");
  if (budgets.empty()) problems.push_back("budgets: at least one budget is required");
  for (int b : budgets) {
    if (b < 1) problems.push_back("budgets: " + std::to_string(b) + " is not positive");
  }
  if (seed_count < 1) problems.push_back("seed_count: must be >= 1");
  if (replicate_seeds.empty()) problems.push_back("replicates: at least one seed is required");
  if (corpus.empty()) {
    problems.push_back("corpus: no tweets");
  } else if (days) {
    if (days->empty()) problems.push_back("days: range is empty");
    if (days->first < corpus.days().front() || days->last > corpus.days().back()) {
      problems.push_back("days: range lies outside the corpus days [" +
                         std::to_string(corpus.days().front()) + ", " +
                         std::to_string(corpus.days().back()) + "]");
    }
  }
  return problems;
}

namespace {

struct Cell {
  Method method;
  int budget = 0;
  std::uint64_t replicate = 0;
};

std::uint64_t mix_seed(std::uint64_t replicate, int day) {
  // splitmix64 finalizer over (replicate, day)
  std::uint64_t z = replicate + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(day + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<MetricsRecord> run_cell(const Corpus& corpus, const OracleSet& oracle,
                                    const ExperimentConfig& config, DayRange days,
                                    const Cell& cell) {
  const char* name = to_string(cell.method.kind);
  std::vector<MetricsRecord> records;
  int current_day = days.first;
  try {
    const auto first_graph = build_graph(corpus, {days.first, days.first}, config.graph_kind);
    const auto seeds = select_initial_seeds(first_graph, oracle, config.seed_count);
    if (seeds.empty()) {
      throw Error(ErrorCode::kData, "no oracle keyword occurs on the first day");
    }

    StaticOracle answers(oracle);
    std::optional<LabelState> labels;
    for (int day = days.first; day <= days.last; ++day) {
      current_day = day;
      SelectionInputs inputs;
      inputs.window = corpus.slice({day, day});
      inputs.graph = std::make_shared<const BipartiteGraph>(
          build_graph(std::span<const Tweet* const>(inputs.window), config.graph_kind));

      Method method = cell.method;
      method.rng_seed = mix_seed(cell.replicate, day);
      method.embedding.rng_seed = method.rng_seed;
      auto session = SelectionSession::init(std::move(inputs), seeds, method, std::move(labels));
      session.run_round(answers, cell.budget, day - days.first + 1, day);
      labels = std::move(session).release_labels();

      MetricsRecord r;
      r.method = name;
      r.budget = cell.budget;
      r.day = day;
      r.replicate = cell.replicate;
      r.recall = recall(*labels, oracle);
      r.labels_used = static_cast<int>(labels->history().size());
      r.precision = r.labels_used > 0 ? precision(*labels, oracle) : 0.0;
      const auto cumulative = corpus.slice({days.first, day});
      const auto c = coverage(*labels, cumulative, oracle);
      r.tweet_coverage = c.tweet;
      r.user_coverage = c.user;
      const auto today = corpus.slice({day, day});
      try {
        const auto d = coverage(*labels, today, oracle);
        r.day_tweet_coverage = d.tweet;
        r.day_user_coverage = d.user;
      } catch (const Error&) {
        // a day without oracle tweets has no coverage to report
      }
      records.push_back(std::move(r));
    }
  } catch (const Error& e) {
    std::ostringstream msg;
    msg << "method=" << name << " budget=" << cell.budget << " day=" << current_day << ": "
        << e.what();
    throw Error(e.code(), msg.str());
  }
  return records;
}

}  // namespace

std::vector<MetricsRecord> run_experiment(const Corpus& corpus, const OracleSet& raw_oracle,
                                          const ExperimentConfig& config) {
  if (const auto problems = config.validate(corpus); !problems.empty()) {
    std::string msg = "invalid experiment config:";
    for (const auto& p : problems) msg += "\n  " + p;
    throw Error(ErrorCode::kInvalidArgument, msg);
  }
  const DayRange days =
      config.days.value_or(DayRange{corpus.days().front(), corpus.days().back()});
  const OracleSet oracle =
      config.filter_oracle_daily ? filter_oracle_daily(raw_oracle, corpus, days) : raw_oracle;
  if (oracle.keywords.empty()) {
    throw Error(ErrorCode::kData, "oracle '" + oracle.topic_name + "' has no usable keywords");
  }

  std::vector<Cell> cells;
  for (const auto& m : config.methods) {
    for (int b : config.budgets) {
      for (auto r : config.replicate_seeds) cells.push_back({m, b, r});
    }
  }

  std::vector<std::vector<MetricsRecord>> results(cells.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        results[i] = run_cell(corpus, oracle, config, days, cells[i]);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(config.jobs, cells.size()));
  std::vector<std::thread> threads;
  for (unsigned j = 1; j < jobs; ++j) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<MetricsRecord> records;
  for (auto& r : results) records.insert(records.end(), r.begin(), r.end());
  std::sort(records.begin(), records.end(), [](const MetricsRecord& a, const MetricsRecord& b) {
    return std::tie(a.method, a.budget, a.replicate, a.day) <
           std::tie(b.method, b.budget, b.replicate, b.day);
  });
  return records;
}

void write_results_csv(const std::vector<MetricsRecord>& records, std::ostream& out) {
  out << "method,budget,day,replicate,recall,precision,tweet_coverage,user_coverage,labels_used\n";
  const auto old_precision = out.precision(17);
  for (const auto& r : records) {
    out << r.method << ',' << r.budget << ',' << r.day << ',' << r.replicate << ',' << r.recall
        << ',' << r.precision << ',' << r.tweet_coverage << ',' << r.user_coverage << ','
        << r.labels_used << '\n';
  }
  out.precision(old_precision);
}

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::vector<MetricsRecord> read_results_csv(std::istream& in) {
  static const std::vector<std::string> kRequired = {
      "method", "budget", "day", "replicate", "recall", "precision",
      "tweet_coverage", "user_coverage", "labels_used"};
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kData, "no data: results file is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_csv(line);
  std::map<std::string, std::size_t> column;
  for (std::size_t i = 0; i < header.size(); ++i) column[header[i]] = i;
  std::string missing;
  for (const auto& name : kRequired) {
    if (!column.count(name)) missing += (missing.empty() ? "" : ", ") + name;
  }
  if (!missing.empty()) throw Error(ErrorCode::kData, "missing columns: " + missing);

  std::vector<MetricsRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto f = split_csv(line);
    if (f.size() < header.size()) {
      throw Error(ErrorCode::kData, "line " + std::to_string(line_no) + ": too few fields");
    }
    try {
      MetricsRecord r;
      r.method = f[column["method"]];
      r.budget = std::stoi(f[column["budget"]]);
      r.day = std::stoi(f[column["day"]]);
      r.replicate = std::stoull(f[column["replicate"]]);
      r.recall = std::stod(f[column["recall"]]);
      r.precision = std::stod(f[column["precision"]]);
      r.tweet_coverage = std::stod(f[column["tweet_coverage"]]);
      r.user_coverage = std::stod(f[column["user_coverage"]]);
      r.labels_used = std::stoi(f[column["labels_used"]]);
      records.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kData, "line " + std::to_string(line_no) + ": bad number");
    }
  }
  return records;
}

std::string summarize_json(const std::vector<MetricsRecord>& records) {
  auto stat = [](const MeanSd& m) {
    nlohmann::ordered_json j;
    j["mean"] = m.mean;
    j["sd"] = m.sd;
    return j;
  };
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& s : summarize(records)) {
    nlohmann::ordered_json j;
    j["method"] = s.method;
    j["budget"] = s.budget;
    j["replicates"] = s.final_recall.n;
    j["recall"] = stat(s.final_recall);
    j["precision"] = stat(s.final_precision);
    j["tweet_coverage"] = stat(s.final_tweet_coverage);
    j["user_coverage"] = stat(s.final_user_coverage);
    j["day_tweet_coverage"] = stat(s.final_day_tweet_coverage);
    j["day_user_coverage"] = stat(s.final_day_user_coverage);
    out.push_back(std::move(j));
  }
  return out.dump(2);
}

}  // namespace keysel
