#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "keysel/corpus.hpp"
#include "keysel/graph.hpp"
#include "keysel/method.hpp"
#include "keysel/oracle_set.hpp"

namespace keysel {

struct ExperimentConfig {
  std::vector<Method> methods;
  std::vector<int> budgets{3, 10, 30};
  std::optional<DayRange> days;  // default: first to last corpus day
  std::size_t seed_count = 10;
  std::vector<std::uint64_t> replicate_seeds{0};
  GraphKind graph_kind = GraphKind::kUserHashtag;
  bool filter_oracle_daily = false;
  unsigned jobs = 1;

  /// Returns every violation found; empty when valid.
  std::vector<std::string> validate(const Corpus& corpus) const;
};

/// Metrics of one (method, budget, replicate) series at the end of a day.
/// Coverage columns use the cumulative window from the first day; the
/// day_* fields use that day alone.
struct MetricsRecord {
  std::string method;
  int budget = 0;
  int day = 0;
  std::uint64_t replicate = 0;
  double recall = 0.0;
  double precision = 0.0;  // 0 while nothing has been labeled
  double tweet_coverage = 0.0;
  double user_coverage = 0.0;
  double day_tweet_coverage = 0.0;
  double day_user_coverage = 0.0;
  int labels_used = 0;  // cumulative oracle queries

  bool operator==(const MetricsRecord&) const = default;
};

/// Runs every (method, budget, replicate) cell over the day range: seeds
/// are the top-degree oracle keywords of the first day, labels carry over
/// from day to day, and each day gets one round with the cell's budget.
/// Records are sorted by (method, budget, replicate, day).
std::vector<MetricsRecord> run_experiment(const Corpus& corpus, const OracleSet& oracle,
                                          const ExperimentConfig& config);

/// Header: method,budget,day,replicate,recall,precision,tweet_coverage,
/// user_coverage,labels_used
void write_results_csv(const std::vector<MetricsRecord>& records, std::ostream& out);
/// Throws Error(kData) naming missing columns or bad rows.
std::vector<MetricsRecord> read_results_csv(std::istream& in);

/// Per (method, budget) final-day mean and standard deviation of every
/// metric across replicates.
std::string summarize_json(const std::vector<MetricsRecord>& records);

}  // namespace keysel
