#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "keysel/graph.hpp"
#include "keysel/labels.hpp"

namespace keysel {

/// |N+(c)|/|L+| - |N-(c)|/|L-| over the left nodes of `within`; a term with
/// an empty label set contributes 0. N+(c) holds the left nodes adjacent to c
/// and to at least one positive hashtag (N-(c) likewise for negatives).
double score_keyselect(NodeId candidate, const EdgeView& within, const LabelState& labels);
/// String overload: a hashtag absent from the view scores 0.
double score_keyselect(std::string_view candidate, const EdgeView& within,
                       const LabelState& labels);

/// Next uniform draw in [0, 1).
double score_random_walk(std::mt19937_64& rng);

/// Degree of the candidate in the hashtag projection of `within`.
std::size_t score_degree_centrality(NodeId candidate, const EdgeView& within);

/// Incremental KeySelect scorer. Keeps, per left node, how many positive and
/// negative hashtags it touches in the view, so a score costs O(deg(c)).
/// Every call must pass the view the scorer was built from.
class KeySelectScorer {
 public:
  KeySelectScorer(const EdgeView& within, const LabelState& labels);

  /// Call after a hashtag got a label.
  void on_label(const EdgeView& within, NodeId hashtag, bool positive);

  double score(const EdgeView& within, NodeId candidate, std::size_t positive_count,
               std::size_t negative_count) const;
  /// |N+(c)|
  std::size_t positive_neighbors(const EdgeView& within, NodeId candidate) const;
  std::size_t negative_neighbors(const EdgeView& within, NodeId candidate) const;

 private:
  std::vector<std::uint32_t> positive_hits_;
  std::vector<std::uint32_t> negative_hits_;
};

}  // namespace keysel
