#pragma once

#include <cstdint>
#include <string_view>

#include "keysel/skipgram.hpp"
#include "keysel/text.hpp"

namespace keysel {

enum class MethodKind { kKeySelect, kRandomWalk, kDegreeCentrality, kTfidf, kWord2Vec };

const char* to_string(MethodKind kind);
/// Accepts keyselect, random_walk, degree_centrality, tfidf, word2vec.
MethodKind parse_method(std::string_view name);

/// A scoring method and its parameters.
struct Method {
  MethodKind kind = MethodKind::kKeySelect;
  std::uint64_t rng_seed = 0;  // random_walk
  SkipGramParams embedding;    // word2vec
  TfidfAggregation tfidf_aggregation = TfidfAggregation::kSum;

  bool graph_based() const {
    return kind == MethodKind::kKeySelect || kind == MethodKind::kRandomWalk ||
           kind == MethodKind::kDegreeCentrality;
  }
};

}  // namespace keysel
