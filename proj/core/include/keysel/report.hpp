#pragma once

#include <string>
#include <vector>

#include "keysel/experiment.hpp"

namespace keysel {

struct MeanSd {
  double mean = 0.0;
  double sd = 0.0;  // sample standard deviation, 0 for a single value
  std::size_t n = 0;
};

MeanSd mean_sd(const std::vector<double>& values);

struct SeriesSummary {
  std::string method;
  int budget = 0;
  MeanSd final_recall;
  MeanSd final_precision;
  MeanSd final_tweet_coverage;
  MeanSd final_user_coverage;
  MeanSd final_day_tweet_coverage;  // last day alone; not carried by the CSV
  MeanSd final_day_user_coverage;
  std::vector<std::pair<int, MeanSd>> recall_by_day;
};

/// Groups records by (method, budget); "final" is each replicate's last day.
std::vector<SeriesSummary> summarize(const std::vector<MetricsRecord>& records);

std::string render_report_text(const std::vector<SeriesSummary>& summary);
std::string render_report_json(const std::vector<SeriesSummary>& summary);

}  // namespace keysel
