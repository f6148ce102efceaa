#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "keysel/candidate_queue.hpp"
#include "keysel/corpus.hpp"
#include "keysel/graph.hpp"
#include "keysel/labels.hpp"
#include "keysel/method.hpp"
#include "keysel/oracle.hpp"
#include "keysel/scoring.hpp"

namespace keysel {

/// Counters for the complexity contract.
struct ScoringStats {
  std::uint64_t evaluations = 0;  // candidate scores computed
  std::uint64_t initial_evaluations = 0;  // of which during initialization
};

struct RoundOutcome {
  int queries = 0;
  int positives = 0;
  int negatives = 0;
  bool exhausted = false;  // queue ran dry before the budget was spent
};

struct Suggestion {
  std::string hashtag;
  double score = 0.0;
  std::uint64_t frequency = 0;            // occurrences in the session graph
  std::size_t positive_cooccurrence = 0;  // |N+(c)|
  std::vector<std::string> sample_tweets;  // up to 5 texts mentioning it
};

/// Graph plus the tweets it was built from. The tweets are only needed by
/// text methods and for suggestion context; their owner must outlive the
/// session.
struct SelectionInputs {
  std::shared_ptr<const BipartiteGraph> graph;
  std::vector<const Tweet*> window;
};

/// One active-selection session over one graph: label state, seed subgraph
/// and candidate queue. Single-writer; callers serialize mutations.
class SelectionSession {
 public:
  /// Expands from all current positives (seeds plus carried-over labels),
  /// scores every candidate of H_s^b minus labeled hashtags and enqueues it.
  /// Text methods instead rank the window's sampled documents.
  /// Throws Error(kInvalidArgument, "no seed keywords") when there is no
  /// positive to start from.
  static SelectionSession init(SelectionInputs inputs, const std::set<std::string>& seeds,
                               const Method& method,
                               std::optional<LabelState> prior_labels = std::nullopt);

  /// Pops up to `budget` candidates, queries the oracle for each and applies
  /// the answer. Every query consumes one unit of budget.
  RoundOutcome run_round(Oracle& oracle, int budget, int round, int day);

  /// Applies a label to a live candidate. Positives enqueue the candidate's
  /// unlabeled hashtag neighbors (graph methods). Throws Error(kConflict) if
  /// already labeled and Error(kInvalidArgument) if not a live candidate.
  void apply_label(const std::string& hashtag, bool positive, int round, int day);

  /// Top live candidate with context, without consuming it.
  std::optional<Suggestion> suggest_next() const;

  const LabelState& labels() const { return labels_; }
  LabelState release_labels() && { return std::move(labels_); }
  const CandidateQueue& queue() const { return queue_; }
  const SeedSubgraph& subgraph() const { return subgraph_; }
  const Method& method() const { return method_; }
  const ScoringStats& stats() const { return stats_; }
  std::size_t candidate_count() const { return queue_.size(); }

 private:
  SelectionSession(SelectionInputs inputs, Method method, LabelState labels);

  double score(NodeId candidate);
  void enqueue_graph_candidates(const std::vector<NodeId>& candidates);
  void enqueue_text_candidates();

  SelectionInputs inputs_;
  Method method_;
  LabelState labels_;
  SeedSubgraph subgraph_;
  CandidateQueue queue_;
  std::optional<KeySelectScorer> keyselect_;
  std::mt19937_64 rng_;
  ScoringStats stats_;
};

}  // namespace keysel
