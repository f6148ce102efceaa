#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "keysel/corpus.hpp"

namespace keysel {

enum class GraphKind { kUserHashtag, kTweetHashtag };

const char* to_string(GraphKind kind);
/// Accepts "user_hashtag" / "tweet_hashtag". Throws Error(kInvalidArgument).
GraphKind parse_graph_kind(std::string_view name);

using NodeId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
  NodeId left = 0;
  NodeId hashtag = 0;
  std::uint32_t weight = 0;  // occurrences, always >= 1

  bool operator==(const Edge&) const = default;
};

/// Weighted bipartite graph between entities (users or tweets) and hashtags.
/// Node ids are assigned in lexicographic order of their labels and edges are
/// sorted by (left, hashtag), so equal inputs give identical graphs.
class BipartiteGraph {
 public:
  BipartiteGraph() = default;
  /// `edges` may come in any order; duplicates (left, hashtag) are merged by
  /// summing weights. Throws Error(kInvalidArgument) on out-of-range ids or a
  /// zero weight.
  BipartiteGraph(GraphKind kind, std::vector<std::string> left_ids,
                 std::vector<std::string> hashtags, std::vector<Edge> edges);

  GraphKind kind() const { return kind_; }
  std::size_t left_count() const { return left_ids_.size(); }
  std::size_t hashtag_count() const { return hashtags_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }

  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeId e) const { return edges_[e]; }
  const std::string& left_id(NodeId n) const { return left_ids_[n]; }
  const std::string& hashtag(NodeId n) const { return hashtags_[n]; }
  const std::vector<std::string>& hashtags() const { return hashtags_; }
  const std::vector<std::string>& left_ids() const { return left_ids_; }

  std::optional<NodeId> find_hashtag(std::string_view tag) const;
  std::optional<NodeId> find_left(std::string_view id) const;

  std::span<const EdgeId> edges_of_left(NodeId n) const;
  std::span<const EdgeId> edges_of_hashtag(NodeId n) const;

  /// Number of distinct left nodes adjacent to the hashtag.
  std::size_t hashtag_degree(NodeId n) const { return edges_of_hashtag(n).size(); }
  /// Sum of incident edge weights.
  std::uint64_t hashtag_occurrences(NodeId n) const;

  /// CSV export with header kind,left_id,hashtag,weight.
  void write_csv(std::ostream& out) const;

  bool operator==(const BipartiteGraph& other) const {
    return kind_ == other.kind_ && left_ids_ == other.left_ids_ &&
           hashtags_ == other.hashtags_ && edges_ == other.edges_;
  }

 private:
  GraphKind kind_ = GraphKind::kUserHashtag;
  std::vector<std::string> left_ids_;
  std::vector<std::string> hashtags_;
  std::unordered_map<std::string, NodeId> left_index_;
  std::unordered_map<std::string, NodeId> hashtag_index_;
  std::vector<Edge> edges_;
  // CSR adjacency: offsets into the edge-id arrays
  std::vector<std::uint32_t> left_offsets_;
  std::vector<EdgeId> left_edges_;
  std::vector<std::uint32_t> hashtag_offsets_;
  std::vector<EdgeId> hashtag_edges_;
};

/// Builds the graph from the tweets of a day range. Nodes without edges are
/// omitted; an empty slice yields an empty graph.
BipartiteGraph build_graph(const Corpus& corpus, DayRange days, GraphKind kind);
BipartiteGraph build_graph(std::span<const Tweet* const> tweets, GraphKind kind);

/// Adjacency restricted to a subset of a graph's edges. Holds a reference to
/// the parent graph, which must outlive the view.
class EdgeView {
 public:
  EdgeView() = default;
  /// `edges` are parent edge ids; duplicates are ignored.
  EdgeView(const BipartiteGraph& graph, std::vector<EdgeId> edges);

  const BipartiteGraph& graph() const { return *graph_; }
  const std::vector<EdgeId>& edges() const { return edges_; }

  std::span<const NodeId> hashtags_of(NodeId left) const;
  std::span<const NodeId> lefts_of(NodeId hashtag) const;
  bool has_hashtag(NodeId hashtag) const { return !lefts_of(hashtag).empty(); }
  /// Distinct hashtags present in the view, ascending id.
  std::vector<NodeId> hashtag_nodes() const;

  /// Distinct hashtags v != h sharing a left node with h, ascending id.
  std::vector<NodeId> cooccurring(NodeId hashtag) const;

 private:
  const BipartiteGraph* graph_ = nullptr;
  std::vector<EdgeId> edges_;
  std::vector<std::vector<NodeId>> by_left_;
  std::vector<std::vector<NodeId>> by_hashtag_;
};

/// Seed edges (E_s^a), their one-hop expansion along left nodes (E_s^b) and
/// the hashtags reached (H_s^b).
struct SeedSubgraph {
  std::shared_ptr<const BipartiteGraph> graph;
  std::vector<EdgeId> seed_edges;      // sorted
  EdgeView expanded;                   // view over E_s^b
  std::vector<NodeId> expanded_hashtags;  // sorted

  const std::vector<EdgeId>& expanded_edges() const { return expanded.edges(); }
  std::set<std::string> expanded_hashtag_names() const;
  bool empty() const { return expanded.edges().empty(); }
};

/// Seeds absent from the graph contribute no edges.
SeedSubgraph expand_seed(std::shared_ptr<const BipartiteGraph> graph,
                         const std::set<std::string>& seeds);

/// Number of distinct hashtags co-occurring with `hashtag` through some left
/// node of the view (degree in the hashtag-hashtag projection).
std::size_t project_degree(const EdgeView& within, NodeId hashtag);
/// String overload: 0 when the hashtag is not in the view.
std::size_t project_degree(const EdgeView& within, std::string_view hashtag);

}  // namespace keysel
