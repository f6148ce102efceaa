#include "keysel/metrics.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "keysel/error.hpp"

namespace keysel {

std::set<std::string> select_initial_seeds(const BipartiteGraph& graph, const OracleSet& oracle,
                                           std::size_t n) {
  if (oracle.keywords.empty()) throw Error(ErrorCode::kInvalidArgument, "oracle is empty");
  std::vector<std::pair<std::size_t, std::string>> ranked;
  for (const auto& k : oracle.keywords) {
    const auto node = graph.find_hashtag(k);
    if (node) ranked.emplace_back(graph.hashtag_degree(*node), k);
  }
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  });
  std::set<std::string> seeds;
  for (std::size_t i = 0; i < ranked.size() && i < n; ++i) seeds.insert(ranked[i].second);
  return seeds;
}

double recall(const LabelState& labels, const OracleSet& oracle) {
  std::size_t target = 0;
  std::size_t found = 0;
  for (const auto& k : oracle.keywords) {
    if (labels.seeds().count(k)) continue;
    ++target;
    found += labels.positives().count(k);
  }
  if (target == 0) throw Error(ErrorCode::kData, "oracle exhausted by seeds");
  return static_cast<double>(found) / static_cast<double>(target);
}

double precision(const LabelState& labels, const OracleSet& /*oracle*/) {
  std::size_t new_positives = 0;
  for (const auto& p : labels.positives()) new_positives += labels.seeds().count(p) == 0;
  std::size_t submitted = new_positives;
  for (const auto& n : labels.negatives()) submitted += labels.seeds().count(n) == 0;
  if (submitted == 0) throw Error(ErrorCode::kData, "no labels submitted");
  return static_cast<double>(new_positives) / static_cast<double>(submitted);
}

namespace {

// Left nodes adjacent to any hashtag of `tags`.
std::size_t reached(const BipartiteGraph& graph, const std::set<std::string>& tags) {
  std::vector<char> hit(graph.left_count(), 0);
  for (const auto& t : tags) {
    const auto node = graph.find_hashtag(t);
    if (!node) continue;
    for (EdgeId e : graph.edges_of_hashtag(*node)) hit[graph.edge(e).left] = 1;
  }
  return static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
}

}  // namespace

Coverage coverage(const LabelState& labels, std::span<const Tweet* const> window,
                  const OracleSet& oracle) {
  const auto tweets = build_graph(window, GraphKind::kTweetHashtag);
  const auto users = build_graph(window, GraphKind::kUserHashtag);
  const std::size_t oracle_tweets = reached(tweets, oracle.keywords);
  const std::size_t oracle_users = reached(users, oracle.keywords);
  if (oracle_tweets == 0 || oracle_users == 0) {
    throw Error(ErrorCode::kData, "no oracle tweets in the evaluation window");
  }
  return {static_cast<double>(reached(tweets, labels.positives())) / oracle_tweets,
          static_cast<double>(reached(users, labels.positives())) / oracle_users};
}

OracleSet filter_oracle_daily(const OracleSet& oracle, const Corpus& corpus, DayRange days) {
  OracleSet out{oracle.topic_name, {}};
  std::map<std::string, std::set<int>> seen_days;
  for (const Tweet* t : corpus.slice(days)) {
    for (const auto& h : t->hashtags) {
      if (oracle.contains(h)) seen_days[h].insert(t->day);
    }
  }
  const auto span = static_cast<std::size_t>(days.last - days.first + 1);
  for (const auto& [k, d] : seen_days) {
    if (d.size() == span) out.keywords.insert(k);
  }
  return out;
}

}  // namespace keysel
