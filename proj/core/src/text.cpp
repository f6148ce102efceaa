#include "keysel/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace keysel {

namespace {

bool is_ascii_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && c != '_' && std::ispunct(u);
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t end = i;
    while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end]))) ++end;
    std::string_view raw = text.substr(i, end - i);
    i = end;
    if (raw.empty()) continue;

    if (raw.front() == '#') {
      for (auto& tag : extract_hashtags(raw)) tokens.push_back(std::move(tag));
      continue;
    }
    if (raw.front() == '@') continue;
    std::string lowered(raw);
    std::transform(lowered.begin(), lowered.end(), lowered.begin(), [](char c) {
      return (c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c;
    });
    if (starts_with(lowered, "http://") || starts_with(lowered, "https://") ||
        starts_with(lowered, "www.")) {
      continue;
    }
    std::string_view word = lowered;
    while (!word.empty() && is_ascii_punct(word.front())) word.remove_prefix(1);
    while (!word.empty() && is_ascii_punct(word.back())) word.remove_suffix(1);
    if (!word.empty()) tokens.emplace_back(word);
  }
  return tokens;
}

TokenizedDoc tokenize(const Tweet& tweet) { return {tweet.tweet_id, tokenize(tweet.text)}; }

std::vector<TokenizedDoc> sample_documents(std::span<const Tweet* const> tweets,
                                           const std::set<std::string>& positives) {
  std::vector<TokenizedDoc> docs;
  for (const Tweet* t : tweets) {
    if (t->is_retweet) continue;
    const bool hit = std::any_of(t->hashtags.begin(), t->hashtags.end(),
                                 [&](const std::string& h) { return positives.count(h) > 0; });
    if (hit) docs.push_back(tokenize(*t));
  }
  return docs;
}

void sort_ranking(std::vector<RankedKeyword>& ranking) {
  std::sort(ranking.begin(), ranking.end(), [](const RankedKeyword& a, const RankedKeyword& b) {
    return a.score != b.score ? a.score > b.score : a.keyword < b.keyword;
  });
}

double tfidf_score(std::string_view keyword, const TokenizedDoc& doc,
                   std::span<const TokenizedDoc> corpus) {
  if (doc.tokens.empty()) return 0.0;
  std::size_t df = 0;
  for (const auto& d : corpus) {
    if (std::find(d.tokens.begin(), d.tokens.end(), keyword) != d.tokens.end()) ++df;
  }
  if (df == 0) return 0.0;
  const auto count = std::count(doc.tokens.begin(), doc.tokens.end(), keyword);
  const double tf = static_cast<double>(count) / static_cast<double>(doc.tokens.size());
  return tf * std::log(static_cast<double>(corpus.size()) / static_cast<double>(df));
}

std::vector<RankedKeyword> tfidf_rank(std::span<const TokenizedDoc> corpus,
                                      const CandidateFilter& filter, std::size_t limit,
                                      TfidfAggregation aggregation) {
  std::unordered_map<std::string, std::size_t> df;
  for (const auto& d : corpus) {
    std::unordered_set<std::string_view> seen(d.tokens.begin(), d.tokens.end());
    for (auto tok : seen) ++df[std::string(tok)];
  }

  std::unordered_map<std::string, double> idf;
  for (const auto& [tok, count] : df) {
    if (filter.admits(tok)) {
      idf[tok] = std::log(static_cast<double>(corpus.size()) / static_cast<double>(count));
    }
  }

  std::unordered_map<std::string, double> score;
  for (const auto& [tok, _] : idf) score[tok] = 0.0;
  for (const auto& d : corpus) {
    if (d.tokens.empty()) continue;
    std::unordered_map<std::string_view, std::size_t> counts;
    for (const auto& tok : d.tokens) ++counts[tok];
    for (const auto& [tok, count] : counts) {
      auto it = idf.find(std::string(tok));
      if (it == idf.end()) continue;
      const double value =
          static_cast<double>(count) / static_cast<double>(d.tokens.size()) * it->second;
      double& agg = score[it->first];
      agg = aggregation == TfidfAggregation::kSum ? agg + value : std::max(agg, value);
    }
  }

  std::vector<RankedKeyword> ranking;
  ranking.reserve(score.size());
  for (auto& [tok, s] : score) ranking.push_back({tok, s});
  sort_ranking(ranking);
  if (ranking.size() > limit) ranking.resize(limit);
  return ranking;
}

}  // namespace keysel
