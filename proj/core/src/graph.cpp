#include "keysel/graph.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include "keysel/error.hpp"

namespace keysel {

const char* to_string(GraphKind kind) {
  return kind == GraphKind::kUserHashtag ? "user_hashtag" : "tweet_hashtag";
}

GraphKind parse_graph_kind(std::string_view name) {
  if (name == "user_hashtag") return GraphKind::kUserHashtag;
  if (name == "tweet_hashtag") return GraphKind::kTweetHashtag;
  throw Error(ErrorCode::kInvalidArgument, "unknown graph kind '" + std::string(name) + "'");
}

namespace {

// Builds CSR offsets/ids for edges grouped by `key`.
template <typename Key>
void build_csr(const std::vector<Edge>& edges, std::size_t node_count, Key key,
               std::vector<std::uint32_t>& offsets, std::vector<EdgeId>& ids) {
  offsets.assign(node_count + 1, 0);
  for (const Edge& e : edges) ++offsets[key(e) + 1];
  for (std::size_t i = 1; i <= node_count; ++i) offsets[i] += offsets[i - 1];
  ids.assign(edges.size(), 0);
  std::vector<std::uint32_t> cursor(offsets.begin(), offsets.end() - 1);
  for (EdgeId e = 0; e < edges.size(); ++e) ids[cursor[key(edges[e])]++] = e;
}

}  // namespace

BipartiteGraph::BipartiteGraph(GraphKind kind, std::vector<std::string> left_ids,
                               std::vector<std::string> hashtags, std::vector<Edge> edges)
    : kind_(kind) {
  // Relabel nodes into lexicographic order.
  auto order_of = [](const std::vector<std::string>& labels) {
    std::vector<NodeId> order(labels.size());
    for (NodeId i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](NodeId a, NodeId b) { return labels[a] < labels[b]; });
    return order;
  };
  const auto left_order = order_of(left_ids);
  const auto tag_order = order_of(hashtags);
  std::vector<NodeId> left_rank(left_ids.size()), tag_rank(hashtags.size());
  for (NodeId i = 0; i < left_order.size(); ++i) {
    left_rank[left_order[i]] = i;
    left_ids_.push_back(std::move(left_ids[left_order[i]]));
  }
  for (NodeId i = 0; i < tag_order.size(); ++i) {
    tag_rank[tag_order[i]] = i;
    hashtags_.push_back(std::move(hashtags[tag_order[i]]));
  }
  for (NodeId i = 0; i < left_ids_.size(); ++i) {
    if (!left_index_.emplace(left_ids_[i], i).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate left node '" + left_ids_[i] + "'");
    }
  }
  for (NodeId i = 0; i < hashtags_.size(); ++i) {
    if (!hashtag_index_.emplace(hashtags_[i], i).second) {
      throw Error(ErrorCode::kInvalidArgument, "duplicate hashtag node '" + hashtags_[i] + "'");
    }
  }

  for (Edge& e : edges) {
    if (e.left >= left_rank.size() || e.hashtag >= tag_rank.size()) {
      throw Error(ErrorCode::kInvalidArgument, "edge endpoint out of range");
    }
    if (e.weight == 0) throw Error(ErrorCode::kInvalidArgument, "edge weight must be >= 1");
    e.left = left_rank[e.left];
    e.hashtag = tag_rank[e.hashtag];
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) {
    return a.left != b.left ? a.left < b.left : a.hashtag < b.hashtag;
  });
  for (const Edge& e : edges) {
    if (!edges_.empty() && edges_.back().left == e.left && edges_.back().hashtag == e.hashtag) {
      edges_.back().weight += e.weight;
    } else {
      edges_.push_back(e);
    }
  }

  build_csr(edges_, left_ids_.size(), [](const Edge& e) { return e.left; }, left_offsets_,
            left_edges_);
  build_csr(edges_, hashtags_.size(), [](const Edge& e) { return e.hashtag; },
            hashtag_offsets_, hashtag_edges_);
}

std::optional<NodeId> BipartiteGraph::find_hashtag(std::string_view tag) const {
  auto it = hashtag_index_.find(std::string(tag));
  if (it == hashtag_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<NodeId> BipartiteGraph::find_left(std::string_view id) const {
  auto it = left_index_.find(std::string(id));
  if (it == left_index_.end()) return std::nullopt;
  return it->second;
}

std::span<const EdgeId> BipartiteGraph::edges_of_left(NodeId n) const {
  return {left_edges_.data() + left_offsets_[n], left_offsets_[n + 1] - left_offsets_[n]};
}

std::span<const EdgeId> BipartiteGraph::edges_of_hashtag(NodeId n) const {
  return {hashtag_edges_.data() + hashtag_offsets_[n],
          hashtag_offsets_[n + 1] - hashtag_offsets_[n]};
}

std::uint64_t BipartiteGraph::hashtag_occurrences(NodeId n) const {
  std::uint64_t total = 0;
  for (EdgeId e : edges_of_hashtag(n)) total += edges_[e].weight;
  return total;
}

void BipartiteGraph::write_csv(std::ostream& out) const {
  out << "kind,left_id,hashtag,weight\n";
  for (const Edge& e : edges_) {
    out << to_string(kind_) << ',' << left_ids_[e.left] << ',' << hashtags_[e.hashtag] << ','
        << e.weight << '\n';
  }
}

BipartiteGraph build_graph(std::span<const Tweet* const> tweets, GraphKind kind) {
  std::map<std::string, NodeId> lefts;
  std::map<std::string, NodeId> tags;
  std::map<std::pair<NodeId, NodeId>, std::uint32_t> weights;
  auto intern = [](std::map<std::string, NodeId>& table, const std::string& key) {
    return table.emplace(key, static_cast<NodeId>(table.size())).first->second;
  };
  for (const Tweet* t : tweets) {
    if (t->hashtags.empty()) continue;
    const NodeId left =
        intern(lefts, kind == GraphKind::kUserHashtag ? t->user_id : t->tweet_id);
    for (const auto& h : t->hashtags) ++weights[{left, intern(tags, h)}];
  }

  std::vector<std::string> left_ids(lefts.size()), hashtags(tags.size());
  for (auto& [name, id] : lefts) left_ids[id] = name;
  for (auto& [name, id] : tags) hashtags[id] = name;
  std::vector<Edge> edges;
  edges.reserve(weights.size());
  for (const auto& [key, w] : weights) edges.push_back({key.first, key.second, w});
  return BipartiteGraph(kind, std::move(left_ids), std::move(hashtags), std::move(edges));
}

BipartiteGraph build_graph(const Corpus& corpus, DayRange days, GraphKind kind) {
  if (days.empty()) throw Error(ErrorCode::kInvalidArgument, "day range is empty");
  const auto slice = corpus.slice(days);
  return build_graph(std::span<const Tweet* const>(slice), kind);
}

EdgeView::EdgeView(const BipartiteGraph& graph, std::vector<EdgeId> edges)
    : graph_(&graph), edges_(std::move(edges)) {
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  by_left_.resize(graph.left_count());
  by_hashtag_.resize(graph.hashtag_count());
  // edges_ sorted by id == sorted by (left, hashtag), so both lists stay sorted
  for (EdgeId e : edges_) {
    const Edge& edge = graph.edge(e);
    by_left_[edge.left].push_back(edge.hashtag);
    by_hashtag_[edge.hashtag].push_back(edge.left);
  }
}

std::span<const NodeId> EdgeView::hashtags_of(NodeId left) const {
  if (left >= by_left_.size()) return {};
  return by_left_[left];
}

std::span<const NodeId> EdgeView::lefts_of(NodeId hashtag) const {
  if (hashtag >= by_hashtag_.size()) return {};
  return by_hashtag_[hashtag];
}

std::vector<NodeId> EdgeView::hashtag_nodes() const {
  std::vector<NodeId> out;
  for (NodeId h = 0; h < by_hashtag_.size(); ++h) {
    if (!by_hashtag_[h].empty()) out.push_back(h);
  }
  return out;
}

std::vector<NodeId> EdgeView::cooccurring(NodeId hashtag) const {
  std::vector<NodeId> out;
  for (NodeId u : lefts_of(hashtag)) {
    for (NodeId v : hashtags_of(u)) {
      if (v != hashtag) out.push_back(v);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::set<std::string> SeedSubgraph::expanded_hashtag_names() const {
  std::set<std::string> out;
  for (NodeId h : expanded_hashtags) out.insert(graph->hashtag(h));
  return out;
}

SeedSubgraph expand_seed(std::shared_ptr<const BipartiteGraph> graph,
                         const std::set<std::string>& seeds) {
  SeedSubgraph sub;
  sub.graph = std::move(graph);
  const BipartiteGraph& g = *sub.graph;

  std::vector<char> touched(g.left_count(), 0);
  for (const auto& seed : seeds) {
    const auto h = g.find_hashtag(seed);
    if (!h) continue;
    for (EdgeId e : g.edges_of_hashtag(*h)) {
      sub.seed_edges.push_back(e);
      touched[g.edge(e).left] = 1;
    }
  }
  std::sort(sub.seed_edges.begin(), sub.seed_edges.end());

  std::vector<EdgeId> expanded;
  for (NodeId u = 0; u < g.left_count(); ++u) {
    if (!touched[u]) continue;
    for (EdgeId e : g.edges_of_left(u)) expanded.push_back(e);
  }
  sub.expanded = EdgeView(g, std::move(expanded));
  sub.expanded_hashtags = sub.expanded.hashtag_nodes();
  return sub;
}

std::size_t project_degree(const EdgeView& within, NodeId hashtag) {
  return within.cooccurring(hashtag).size();
}

std::size_t project_degree(const EdgeView& within, std::string_view hashtag) {
  const auto h = within.graph().find_hashtag(hashtag);
  return h ? project_degree(within, *h) : 0;
}

}  // namespace keysel
