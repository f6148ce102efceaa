#include "keysel/report.hpp"

#include <cmath>
#include <iomanip>
#include <map>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

namespace keysel {

MeanSd mean_sd(const std::vector<double>& values) {
  MeanSd out;
  out.n = values.size();
  if (values.empty()) return out;
  double sum = 0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.sd = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

std::vector<SeriesSummary> summarize(const std::vector<MetricsRecord>& records) {
  using Key = std::pair<std::string, int>;
  std::map<Key, std::map<std::uint64_t, const MetricsRecord*>> finals;
  std::map<Key, std::map<int, std::vector<double>>> by_day;
  for (const auto& r : records) {
    const Key key{r.method, r.budget};
    auto& last = finals[key][r.replicate];
    if (!last || r.day > last->day) last = &r;
    by_day[key][r.day].push_back(r.recall);
  }

  std::vector<SeriesSummary> out;
  for (const auto& [key, reps] : finals) {
    SeriesSummary s;
    s.method = key.first;
    s.budget = key.second;
    std::vector<double> rec, prec, tc, uc, dtc, duc;
    for (const auto& [_, r] : reps) {
      rec.push_back(r->recall);
      prec.push_back(r->precision);
      tc.push_back(r->tweet_coverage);
      uc.push_back(r->user_coverage);
      dtc.push_back(r->day_tweet_coverage);
      duc.push_back(r->day_user_coverage);
    }
    s.final_recall = mean_sd(rec);
    s.final_precision = mean_sd(prec);
    s.final_tweet_coverage = mean_sd(tc);
    s.final_user_coverage = mean_sd(uc);
    s.final_day_tweet_coverage = mean_sd(dtc);
    s.final_day_user_coverage = mean_sd(duc);
    for (const auto& [day, values] : by_day[key]) s.recall_by_day.emplace_back(day, mean_sd(values));
    out.push_back(std::move(s));
  }
  return out;
}

std::string render_report_text(const std::vector<SeriesSummary>& summary) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(4);
  out << "Final recall (mean +- sd over replicates)\n";
  out << std::left << std::setw(20) << "method" << std::setw(8) << "budget" << std::setw(6)
      << "n" << "recall\n";
  for (const auto& s : summary) {
    out << std::left << std::setw(20) << s.method << std::setw(8) << s.budget << std::setw(6)
        << s.final_recall.n << s.final_recall.mean << " +- " << s.final_recall.sd << '\n';
  }
  out << "\nRecall by day (mean)\n";
  for (const auto& s : summary) {
    out << s.method << " b=" << s.budget << ':';
    for (const auto& [day, m] : s.recall_by_day) out << ' ' << day << '=' << m.mean;
    out << '\n';
  }
  return out.str();
}

std::string render_report_json(const std::vector<SeriesSummary>& summary) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& s : summary) {
    nlohmann::ordered_json j;
    j["method"] = s.method;
    j["budget"] = s.budget;
    j["replicates"] = s.final_recall.n;
    j["final_recall"] = {{"mean", s.final_recall.mean}, {"sd", s.final_recall.sd}};
    auto series = nlohmann::ordered_json::array();
    for (const auto& [day, m] : s.recall_by_day) {
      series.push_back({{"day", day}, {"mean", m.mean}, {"sd", m.sd}});
    }
    j["recall_by_day"] = std::move(series);
    out.push_back(std::move(j));
  }
  return out.dump(2);
}

}  // namespace keysel
