#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "keysel/corpus.hpp"

namespace keysel {

struct TokenizedDoc {
  std::string tweet_id;
  std::vector<std::string> tokens;
};

/// Lowercased word tokens. URLs and @mentions are dropped; hashtags are kept
/// as tokens, normalized the same way as extract_hashtags.
std::vector<std::string> tokenize(std::string_view text);
TokenizedDoc tokenize(const Tweet& tweet);

/// Tokenized texts of the non-retweet tweets that mention at least one of
/// `positives`.
std::vector<TokenizedDoc> sample_documents(std::span<const Tweet* const> tweets,
                                           const std::set<std::string>& positives);

/// A keyword with its ranking score.
struct RankedKeyword {
  std::string keyword;
  double score = 0.0;

  bool operator==(const RankedKeyword&) const = default;
};

/// Sorts by descending score, ascending keyword on ties.
void sort_ranking(std::vector<RankedKeyword>& ranking);

/// tf(k,t) * ln(|T| / df(k)). Zero when k occurs in no document or t is empty.
double tfidf_score(std::string_view keyword, const TokenizedDoc& doc,
                   std::span<const TokenizedDoc> corpus);

enum class TfidfAggregation { kSum, kMax };

/// Restricts a ranking to an allowed vocabulary and drops excluded keywords.
struct CandidateFilter {
  const std::set<std::string>* allowed = nullptr;  // null: every token allowed
  std::function<bool(const std::string&)> excluded;  // null: nothing excluded

  bool admits(const std::string& keyword) const {
    return (!allowed || allowed->count(keyword) > 0) && !(excluded && excluded(keyword));
  }
};

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

/// Scores every admitted token by aggregating tfidf over all documents and
/// returns the top `limit`.
std::vector<RankedKeyword> tfidf_rank(std::span<const TokenizedDoc> corpus,
                                      const CandidateFilter& filter, std::size_t limit,
                                      TfidfAggregation aggregation = TfidfAggregation::kSum);

}  // namespace keysel
