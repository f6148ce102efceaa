#include "keysel/scoring.hpp"

#include <algorithm>

namespace keysel {

namespace {

double ratio(std::size_t hits, std::size_t labeled) {
  return labeled == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(labeled);
}

}  // namespace

double score_keyselect(NodeId candidate, const EdgeView& within, const LabelState& labels) {
  const BipartiteGraph& g = within.graph();
  std::size_t pos = 0;
  std::size_t neg = 0;
  for (NodeId u : within.lefts_of(candidate)) {
    bool touches_pos = false;
    bool touches_neg = false;
    for (NodeId v : within.hashtags_of(u)) {
      const auto label = labels.label_of(g.hashtag(v));
      if (!label) continue;
      (*label ? touches_pos : touches_neg) = true;
    }
    pos += touches_pos;
    neg += touches_neg;
  }
  return ratio(pos, labels.positives().size()) - ratio(neg, labels.negatives().size());
}

double score_keyselect(std::string_view candidate, const EdgeView& within,
                       const LabelState& labels) {
  const auto c = within.graph().find_hashtag(candidate);
  // absent hashtags have empty neighborhoods
  if (!c) return 0.0;
  return score_keyselect(*c, within, labels);
}

double score_random_walk(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

std::size_t score_degree_centrality(NodeId candidate, const EdgeView& within) {
  return project_degree(within, candidate);
}

KeySelectScorer::KeySelectScorer(const EdgeView& within, const LabelState& labels)
    : positive_hits_(within.graph().left_count(), 0),
      negative_hits_(within.graph().left_count(), 0) {
  const BipartiteGraph& g = within.graph();
  for (const auto* set : {&labels.positives(), &labels.negatives()}) {
    const bool positive = set == &labels.positives();
    for (const auto& tag : *set) {
      if (auto h = g.find_hashtag(tag)) on_label(within, *h, positive);
    }
  }
}

void KeySelectScorer::on_label(const EdgeView& within, NodeId hashtag, bool positive) {
  auto& hits = positive ? positive_hits_ : negative_hits_;
  for (NodeId u : within.lefts_of(hashtag)) ++hits[u];
}

std::size_t KeySelectScorer::positive_neighbors(const EdgeView& within, NodeId candidate) const {
  const auto lefts = within.lefts_of(candidate);
  return std::count_if(lefts.begin(), lefts.end(), [&](NodeId u) { return positive_hits_[u] > 0; });
}

std::size_t KeySelectScorer::negative_neighbors(const EdgeView& within, NodeId candidate) const {
  const auto lefts = within.lefts_of(candidate);
  return std::count_if(lefts.begin(), lefts.end(), [&](NodeId u) { return negative_hits_[u] > 0; });
}

double KeySelectScorer::score(const EdgeView& within, NodeId candidate,
                              std::size_t positive_count, std::size_t negative_count) const {
  return ratio(positive_neighbors(within, candidate), positive_count) -
         ratio(negative_neighbors(within, candidate), negative_count);
}

}  // namespace keysel
