#include "keysel/session.hpp"

#include <algorithm>

#include "keysel/error.hpp"
#include "keysel/skipgram.hpp"
#include "keysel/text.hpp"

namespace keysel {

namespace {
constexpr std::size_t kSampleTweets = 5;
}

SelectionSession::SelectionSession(SelectionInputs inputs, Method method, LabelState labels)
    : inputs_(std::move(inputs)),
      method_(method),
      labels_(std::move(labels)),
      rng_(method.rng_seed) {}

SelectionSession SelectionSession::init(SelectionInputs inputs, const std::set<std::string>& seeds,
                                        const Method& method,
                                        std::optional<LabelState> prior_labels) {
  if (!inputs.graph) throw Error(ErrorCode::kInvalidArgument, "session needs a graph");
  LabelState labels;
  if (prior_labels) {
    for (const auto& s : seeds) {
      if (prior_labels->label_of(s) != true) {
        throw Error(ErrorCode::kInvalidArgument,
                    "seed '" + s + "' is not a positive of the carried-over labels");
      }
    }
    labels = std::move(*prior_labels);
  } else {
    labels = LabelState(seeds);
  }
  if (labels.positives().empty()) {
    throw Error(ErrorCode::kInvalidArgument, "no seed keywords");
  }

  SelectionSession session(std::move(inputs), method, std::move(labels));
  session.subgraph_ = expand_seed(session.inputs_.graph, session.labels_.positives());
  session.keyselect_.emplace(session.subgraph_.expanded, session.labels_);

  if (method.graph_based()) {
    const BipartiteGraph& g = *session.inputs_.graph;
    std::vector<NodeId> candidates;
    for (NodeId h : session.subgraph_.expanded_hashtags) {
      if (!session.labels_.is_labeled(g.hashtag(h))) candidates.push_back(h);
    }
    session.enqueue_graph_candidates(candidates);
  } else {
    session.enqueue_text_candidates();
  }
  session.stats_.initial_evaluations = session.stats_.evaluations;
  return session;
}

double SelectionSession::score(NodeId candidate) {
  ++stats_.evaluations;
  const EdgeView& view = subgraph_.expanded;
  switch (method_.kind) {
    case MethodKind::kKeySelect:
      return keyselect_->score(view, candidate, labels_.positives().size(),
                               labels_.negatives().size());
    case MethodKind::kRandomWalk:
      return score_random_walk(rng_);
    case MethodKind::kDegreeCentrality:
      return static_cast<double>(score_degree_centrality(candidate, view));
    default:
      throw Error(ErrorCode::kInvalidArgument, "text methods are not scored per node");
  }
}

void SelectionSession::enqueue_graph_candidates(const std::vector<NodeId>& candidates) {
  // scored in ascending node order so random draws are reproducible
  const BipartiteGraph& g = *inputs_.graph;
  for (NodeId c : candidates) {
    const double s = score(c);
    queue_.offer(g.hashtag(c), s);
  }
}

void SelectionSession::enqueue_text_candidates() {
  const BipartiteGraph& g = *inputs_.graph;
  const std::set<std::string> vocabulary(g.hashtags().begin(), g.hashtags().end());
  CandidateFilter filter;
  filter.allowed = &vocabulary;
  filter.excluded = [this](const std::string& h) { return labels_.is_labeled(h); };

  const auto docs = sample_documents(inputs_.window, labels_.positives());
  std::vector<RankedKeyword> ranking;
  if (method_.kind == MethodKind::kTfidf) {
    ranking = tfidf_rank(docs, filter, kUnbounded, method_.tfidf_aggregation);
  } else {
    try {
      const auto model = train_skipgram(docs, method_.embedding);
      ranking = embedding_rank(model, labels_.positives(), filter, kUnbounded);
    } catch (const Error& e) {
      // too little text for a model: nothing to propose this round
      if (e.code() != ErrorCode::kData) throw;
    }
  }
  stats_.evaluations += ranking.size();
  for (const auto& r : ranking) queue_.offer(r.keyword, r.score);
}

void SelectionSession::apply_label(const std::string& hashtag, bool positive, int round,
                                   int day) {
  if (labels_.is_labeled(hashtag)) {
    labels_.record({round, day, hashtag, positive, 0.0});  // throws the conflict
  }
  const auto s = queue_.score_of(hashtag);
  if (!s) {
    throw Error(ErrorCode::kInvalidArgument, "'" + hashtag + "' is not a pending candidate");
  }
  queue_.discard(hashtag);
  labels_.record({round, day, hashtag, positive, *s});

  const auto node = inputs_.graph->find_hashtag(hashtag);
  if (!node) return;
  keyselect_->on_label(subgraph_.expanded, *node, positive);
  if (!positive || !method_.graph_based()) return;

  const BipartiteGraph& g = *inputs_.graph;
  std::vector<NodeId> neighbors;
  for (NodeId n : subgraph_.expanded.cooccurring(*node)) {
    if (!labels_.is_labeled(g.hashtag(n))) neighbors.push_back(n);
  }
  enqueue_graph_candidates(neighbors);
}

RoundOutcome SelectionSession::run_round(Oracle& oracle, int budget, int round, int day) {
  if (budget < 1) throw Error(ErrorCode::kInvalidArgument, "budget must be >= 1");
  RoundOutcome outcome;
  while (outcome.queries < budget) {
    const auto top = queue_.peek();
    if (!top) {
      outcome.exhausted = true;
      break;
    }
    const bool relevant = oracle.is_relevant(top->hashtag);
    apply_label(top->hashtag, relevant, round, day);
    ++outcome.queries;
    ++(relevant ? outcome.positives : outcome.negatives);
  }
  return outcome;
}

std::optional<Suggestion> SelectionSession::suggest_next() const {
  const auto top = queue_.peek();
  if (!top) return std::nullopt;
  Suggestion s;
  s.hashtag = top->hashtag;
  s.score = top->score;
  if (const auto node = inputs_.graph->find_hashtag(top->hashtag)) {
    s.frequency = inputs_.graph->hashtag_occurrences(*node);
    s.positive_cooccurrence = keyselect_->positive_neighbors(subgraph_.expanded, *node);
  }
  for (const Tweet* t : inputs_.window) {
    if (s.sample_tweets.size() >= kSampleTweets) break;
    if (std::find(t->hashtags.begin(), t->hashtags.end(), top->hashtag) != t->hashtags.end()) {
      s.sample_tweets.push_back(t->text);
    }
  }
  return s;
}

}  // namespace keysel
