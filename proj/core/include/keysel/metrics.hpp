#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>

#include "keysel/corpus.hpp"
#include "keysel/graph.hpp"
#include "keysel/labels.hpp"
#include "keysel/oracle_set.hpp"

namespace keysel {

/// The `n` oracle keywords with the highest hashtag degree in the graph,
/// ties broken lexicographically. Keywords absent from the graph have degree
/// 0 and are never selected. Throws Error(kInvalidArgument) for an empty
/// oracle.
std::set<std::string> select_initial_seeds(const BipartiteGraph& graph, const OracleSet& oracle,
                                           std::size_t n);

/// |(L+ \ seeds) ∩ (O \ seeds)| / |O \ seeds|.
/// Throws Error(kData, "oracle exhausted by seeds") when O ⊆ seeds.
double recall(const LabelState& labels, const OracleSet& oracle);

/// |L+ \ seeds| / |(L+ ∪ L-) \ seeds|.
/// Throws Error(kData, "no labels submitted") when nothing was labeled.
double precision(const LabelState& labels, const OracleSet& oracle);

struct Coverage {
  double tweet = 0.0;
  double user = 0.0;
};

/// Tweets (users) mentioning a positive keyword over tweets (users)
/// mentioning an oracle keyword, within the window. The numerator is not
/// restricted to oracle tweets, so values above 1 are possible.
/// Throws Error(kData) when the window has no oracle tweet.
Coverage coverage(const LabelState& labels, std::span<const Tweet* const> window,
                  const OracleSet& oracle);

/// Keeps the oracle keywords that occur on every day of the range.
OracleSet filter_oracle_daily(const OracleSet& oracle, const Corpus& corpus, DayRange days);

}  // namespace keysel
