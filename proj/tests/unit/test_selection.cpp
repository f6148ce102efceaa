#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <queue>
#include <random>
#include <thread>

#include "keysel/candidate_queue.hpp"
#include "keysel/error.hpp"
#include "keysel/labels.hpp"
#include "keysel/oracle.hpp"
#include "keysel/scoring.hpp"
#include "keysel/session.hpp"
#include "keysel/synthetic.hpp"
#include "oracles.hpp"

using namespace keysel;
using namespace keysel::testing;

namespace {

struct Fixture {
  std::vector<Tweet> tweets;
  Corpus corpus;
  SelectionInputs inputs;

  // One tweet per (user, tag) pair, all on day 0.
  explicit Fixture(const std::vector<RawEdge>& edges, GraphKind kind = GraphKind::kUserHashtag) {
    int id = 0;
    for (const auto& [u, h] : edges) {
      tweets.push_back(make_tweet("t" + std::to_string(id++), u, 0, "#" + h));
    }
    corpus = Corpus(tweets);
    inputs.window = corpus.slice({0, 0});
    inputs.graph = std::make_shared<const BipartiteGraph>(
        build_graph(std::span<const Tweet* const>(inputs.window), kind));
  }
};

std::set<std::string> queued(const SelectionSession& s) {
  std::set<std::string> out;
  for (const auto& e : s.queue().snapshot()) out.insert(e.hashtag);
  return out;
}

std::set<RawEdge> raw_view(const EdgeView& view) {
  std::set<RawEdge> out;
  const auto& g = view.graph();
  for (EdgeId e : view.edges()) out.insert({g.left_id(g.edge(e).left), g.hashtag(g.edge(e).hashtag)});
  return out;
}

LabelState random_labels(std::mt19937_64& rng, const std::vector<std::string>& tags,
                         std::vector<std::string>& unlabeled) {
  std::set<std::string> seeds, negatives;
  std::vector<std::string> rest;
  std::uniform_int_distribution<int> pick(0, 3);
  for (const auto& t : tags) {
    const int p = pick(rng);
    if (p == 0) seeds.insert(t);
    else if (p == 1) negatives.insert(t);
    else rest.push_back(t);
  }
  if (seeds.empty()) {
    seeds.insert(rest.empty() ? *negatives.begin() : rest.back());
    negatives.erase(*seeds.begin());
    if (!rest.empty() && seeds.count(rest.back())) rest.pop_back();
  }
  LabelState labels(seeds);
  for (const auto& n : negatives) labels.record({1, 0, n, false, 0.0});
  unlabeled = rest;
  return labels;
}

}  // namespace

TEST_SUITE("score_keyselect") {
  TEST_CASE("positive and negative neighborhoods cancel") {
    Fixture f({{"u1", "c"}, {"u1", "p"}, {"u2", "c"}, {"u2", "n"}, {"u3", "p"}});
    LabelState labels({"p"});
    labels.record({1, 0, "n", false, 0});
    std::vector<EdgeId> all(f.inputs.graph->edge_count());
    for (EdgeId e = 0; e < all.size(); ++e) all[e] = e;
    const EdgeView view(*f.inputs.graph, all);
    CHECK(score_keyselect("c", view, labels) == 0.0);
  }

  TEST_CASE("empty negative set contributes nothing") {
    Fixture f({{"u1", "c"}, {"u1", "p"}});
    const auto sub = expand_seed(f.inputs.graph, {"p"});
    CHECK(score_keyselect("c", sub.expanded, LabelState({"p"})) == 1.0);
  }

  TEST_CASE("several positives on one user count the user once") {
    Fixture f({{"u1", "c"}, {"u1", "p"}, {"u1", "q"}, {"u2", "c"}});
    const auto sub = expand_seed(f.inputs.graph, {"p", "q"});
    // N+ = {u1}, |L+| = 2
    CHECK(score_keyselect("c", sub.expanded, LabelState({"p", "q"})) == 0.5);
  }

  TEST_CASE("matches set intersection on random graphs") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 40; ++trial) {
      const auto rg = random_graph(rng, 50, 30, 0.1);
      const auto g = std::make_shared<const BipartiteGraph>(rg.build());
      std::vector<std::string> unlabeled;
      const auto labels = random_labels(rng, rg.tags, unlabeled);
      const auto sub = expand_seed(g, labels.positives());
      const auto within = raw_view(sub.expanded);
      KeySelectScorer incremental(sub.expanded, labels);
      std::shuffle(unlabeled.begin(), unlabeled.end(), rng);
      if (unlabeled.size() > 20) unlabeled.resize(20);
      for (const auto& c : unlabeled) {
        const double expected =
            brute_keyselect(within, c, labels.positives(), labels.negatives());
        CHECK(std::abs(score_keyselect(c, sub.expanded, labels) - expected) <= 1e-12);
        const NodeId node = *g->find_hashtag(c);
        CHECK(std::abs(incremental.score(sub.expanded, node, labels.positives().size(),
                                         labels.negatives().size()) -
                       expected) <= 1e-12);
      }
    }
  }

  TEST_CASE("duplicating every tweet keeps the initial pop order") {
    const auto s = generate_synthetic({.num_users = 60, .num_days = 1, .rng_seed = 21});
    std::vector<Tweet> doubled = s.corpus.tweets();
    for (const auto& t : s.corpus.tweets()) {
      Tweet copy = t;
      copy.tweet_id += "-dup";
      doubled.push_back(std::move(copy));
    }
    const Corpus twice(doubled);
    auto order = [](const Corpus& c) {
      SelectionInputs in;
      in.window = c.slice({0, 0});
      in.graph = std::make_shared<const BipartiteGraph>(
          build_graph(std::span<const Tweet* const>(in.window), GraphKind::kUserHashtag));
      const auto session = SelectionSession::init(in, {topic_hashtag(0, 0)}, Method{});
      return session.queue().snapshot();
    };
    CHECK(order(s.corpus) == order(twice));
  }
}

TEST_SUITE("baseline scores") {
  TEST_CASE("random walk is reproducible and uniform") {
    std::mt19937_64 a(5), b(5);
    for (int i = 0; i < 100; ++i) CHECK(score_random_walk(a) == score_random_walk(b));
    std::mt19937_64 rng(9);
    double sum = 0;
    const int n = 100000;
    for (int i = 0; i < n; ++i) {
      const double x = score_random_walk(rng);
      REQUIRE(x >= 0.0);
      REQUIRE(x <= 1.0);
      sum += x;
    }
    CHECK(std::abs(sum / n - 0.5) <= 0.01);
  }

  TEST_CASE("degree centrality delegates to the projection") {
    Fixture f({{"u1", "c"}, {"u1", "a"}, {"u1", "b"}, {"u2", "c"}, {"u2", "a"}});
    const auto sub = expand_seed(f.inputs.graph, {"a"});
    CHECK(score_degree_centrality(*f.inputs.graph->find_hashtag("c"), sub.expanded) == 2);
    CHECK(score_degree_centrality(*f.inputs.graph->find_hashtag("b"), sub.expanded) == 2);
  }
}

TEST_SUITE("candidate_queue") {
  TEST_CASE("score order with lexicographic ties") {
    CandidateQueue q;
    q.offer("b", 0.5);
    q.offer("a", 0.5);
    q.offer("c", 0.9);
    q.offer("d", -1.0);
    std::vector<std::string> order;
    while (auto e = q.pop()) order.push_back(e->hashtag);
    CHECK(order == std::vector<std::string>{"c", "a", "b", "d"});
    CHECK(q.empty());
  }

  TEST_CASE("better offers supersede, worse ones are ignored") {
    CandidateQueue q;
    CHECK(q.offer("x", 0.2));
    CHECK_FALSE(q.offer("x", 0.1));
    CHECK(q.offer("x", 0.8));
    CHECK(q.size() == 1);
    CHECK(*q.score_of("x") == 0.8);
    q.offer("y", 0.5);
    CHECK(q.pop()->hashtag == "x");
    CHECK(q.pop()->hashtag == "y");
    CHECK_FALSE(q.pop());
  }

  TEST_CASE("discarded entries never come back") {
    CandidateQueue q;
    q.offer("x", 0.9);
    q.offer("y", 0.2);
    q.discard("x");
    CHECK(q.peek()->hashtag == "y");
    CHECK(q.snapshot() == std::vector<QueueEntry>{{0.2, "y"}});
  }

  TEST_CASE("pops are non-increasing against a sorted reference") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> tag(0, 40), score(0, 10);
    CandidateQueue q;
    std::map<std::string, double> best;
    for (int i = 0; i < 300; ++i) {
      const auto h = tag_name(tag(rng));
      const double s = score(rng) / 10.0;
      q.offer(h, s);
      best[h] = std::max(best.count(h) ? best[h] : -1.0, s);
    }
    std::vector<QueueEntry> expected;
    for (const auto& [h, s] : best) expected.push_back({s, h});
    std::sort(expected.begin(), expected.end(), [](const QueueEntry& a, const QueueEntry& b) {
      return a.score != b.score ? a.score > b.score : a.hashtag < b.hashtag;
    });
    std::vector<QueueEntry> popped;
    while (auto e = q.pop()) popped.push_back(*e);
    CHECK(popped == expected);
  }
}

TEST_SUITE("label_state") {
  TEST_CASE("seeds start positive and relabeling conflicts") {
    LabelState s({"a"});
    CHECK(*s.label_of("a") == true);
    s.record({1, 0, "b", false, 0.25});
    CHECK(*s.label_of("b") == false);
    CHECK_FALSE(s.label_of("c"));
    try {
      s.record({1, 0, "b", true, 0});
      FAIL("expected conflict");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kConflict);
    }
    CHECK_THROWS_AS(s.record({1, 0, "a", false, 0}), Error);
  }

  TEST_CASE("json round trip") {
    LabelState s({"a", "b"});
    s.record({1, 0, "c", true, 0.5});
    s.record({2, 3, "d", false, -0.125});
    const auto json = s.to_json();
    CHECK(json ==
          R"({"seeds":["a","b"],"positives":["a","b","c"],"negatives":["d"],"history":[)"
          R"({"round":1,"day":0,"hashtag":"c","label":"positive","score":0.5},)"
          R"({"round":2,"day":3,"hashtag":"d","label":"negative","score":-0.125}]})");
    const auto back = LabelState::from_json(json);
    CHECK(back == s);
    CHECK(back.to_json() == json);
    CHECK_THROWS_AS(LabelState::from_json(R"({"seeds":[]})"), Error);
    CHECK_THROWS_AS(
        LabelState::from_json(
            R"({"seeds":["a"],"positives":["a","z"],"negatives":[],"history":[]})"),
        Error);
  }
}

TEST_SUITE("session") {
  TEST_CASE("initial queue is the expansion minus labels") {
    Fixture f({{"u1", "a"}, {"u1", "b"}, {"u1", "c"}, {"u2", "d"}});
    const auto s = SelectionSession::init(f.inputs, {"a"}, Method{});
    CHECK(queued(s) == std::set<std::string>{"b", "c"});
    CHECK(s.candidate_count() == 2);

    LabelState prior({"a"});
    prior.record({1, 0, "b", false, 0});
    const auto carried = SelectionSession::init(f.inputs, {"a"}, Method{}, prior);
    CHECK(queued(carried) == std::set<std::string>{"c"});
    CHECK(carried.labels() == prior);
  }

  TEST_CASE("no seeds is an error") {
    Fixture f(std::vector<RawEdge>{{"u1", "a"}});
    try {
      SelectionSession::init(f.inputs, {}, Method{});
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(std::string(e.what()) == "no seed keywords");
    }
    LabelState prior({"a"});
    CHECK_THROWS_AS(SelectionSession::init(f.inputs, {"b"}, Method{}, prior), Error);
  }

  TEST_CASE("queue membership on a synthetic corpus") {
    const auto syn = generate_synthetic({.num_users = 80, .num_days = 1, .rng_seed = 2});
    SelectionInputs in;
    in.window = syn.corpus.slice({0, 0});
    in.graph = std::make_shared<const BipartiteGraph>(
        build_graph(std::span<const Tweet* const>(in.window), GraphKind::kUserHashtag));
    std::set<RawEdge> raw;
    for (const Tweet* t : in.window) {
      for (const auto& h : t->hashtags) raw.insert({t->user_id, h});
    }
    LabelState prior({topic_hashtag(0, 0), topic_hashtag(0, 1)});
    prior.record({1, 0, topic_hashtag(0, 2), true, 0});
    prior.record({1, 0, background_hashtag(3), false, 0});
    prior.record({1, 0, topic_hashtag(1, 0), false, 0});
    for (const auto kind : {MethodKind::kKeySelect, MethodKind::kRandomWalk,
                            MethodKind::kDegreeCentrality}) {
      const auto s = SelectionSession::init(in, prior.seeds(), Method{.kind = kind}, prior);
      std::set<std::string> expected;
      for (const auto& h : hashtags_in(brute_expand(raw, prior.positives()))) {
        if (!prior.is_labeled(h)) expected.insert(h);
      }
      CHECK(queued(s) == expected);
    }
  }

  TEST_CASE("initial scores match the method") {
    const auto syn = generate_synthetic({.num_users = 50, .num_days = 1, .rng_seed = 6});
    SelectionInputs in;
    in.window = syn.corpus.slice({0, 0});
    in.graph = std::make_shared<const BipartiteGraph>(
        build_graph(std::span<const Tweet* const>(in.window), GraphKind::kUserHashtag));
    const std::set<std::string> seeds{topic_hashtag(1, 3)};
    const auto ks = SelectionSession::init(in, seeds, Method{});
    const auto dc = SelectionSession::init(in, seeds, Method{.kind = MethodKind::kDegreeCentrality});
    for (const auto& e : ks.queue().snapshot()) {
      CHECK(e.score == score_keyselect(e.hashtag, ks.subgraph().expanded, ks.labels()));
    }
    for (const auto& e : dc.queue().snapshot()) {
      CHECK(e.score == double(project_degree(dc.subgraph().expanded, e.hashtag)));
    }
    const auto rw = SelectionSession::init(in, seeds, Method{.kind = MethodKind::kRandomWalk, .rng_seed = 4});
    const auto rw2 = SelectionSession::init(in, seeds, Method{.kind = MethodKind::kRandomWalk, .rng_seed = 4});
    CHECK(rw.queue().snapshot() == rw2.queue().snapshot());
  }

  TEST_CASE("single positive step enqueues neighbors") {
    // b is top (shares u1 and u2 with a); labeling it positive reaches d via u3
    Fixture f({{"u1", "a"}, {"u1", "b"}, {"u2", "a"}, {"u2", "b"}, {"u2", "c"},
               {"u3", "b"}, {"u3", "d"}, {"u3", "a"}});
    auto s = SelectionSession::init(f.inputs, {"a"}, Method{});
    REQUIRE(s.queue().peek()->hashtag == "b");
    StaticOracle oracle({"t", {"a", "b"}});
    const auto before = s.labels().positives().size();
    const auto out = s.run_round(oracle, 1, 1, 0);
    CHECK(out.queries == 1);
    CHECK(out.positives == 1);
    CHECK(s.labels().positives().size() == before + 1);
    CHECK(s.labels().history().back().hashtag == "b");
  }

  TEST_CASE("positive label pushes unlabeled co-occurring hashtags") {
    Fixture f({{"u1", "a"}, {"u1", "b"}, {"u2", "b"}, {"u2", "x"}, {"u3", "a"}, {"u3", "y"}});
    auto s = SelectionSession::init(f.inputs, {"a"}, Method{});
    CHECK(queued(s) == std::set<std::string>{"b", "y"});
    // x is outside E_s^b, so it stays out even after b turns positive
    s.apply_label("b", true, 1, 0);
    CHECK(queued(s) == std::set<std::string>{"y"});
    const auto scores_before = s.stats().evaluations;
    s.apply_label("y", true, 1, 0);
    CHECK(s.stats().evaluations == scores_before);  // a and b are labeled
  }

  TEST_CASE("single negative step only shrinks the queue") {
    Fixture f({{"u1", "a"}, {"u1", "b"}, {"u1", "c"}, {"u2", "b"}, {"u2", "e"}});
    auto s = SelectionSession::init(f.inputs, {"a"}, Method{});
    const auto before = queued(s);
    StaticOracle none({"t", {"a"}});
    const auto out = s.run_round(none, 1, 1, 0);
    CHECK(out.negatives == 1);
    CHECK(s.labels().negatives().size() == 1);
    auto after = queued(s);
    CHECK(after.size() == before.size() - 1);
    CHECK(std::includes(before.begin(), before.end(), after.begin(), after.end()));
  }

  TEST_CASE("budget counts every query") {
    const auto syn = generate_synthetic({.num_users = 120, .num_days = 1, .rng_seed = 13});
    SelectionInputs in;
    in.window = syn.corpus.slice({0, 0});
    in.graph = std::make_shared<const BipartiteGraph>(
        build_graph(std::span<const Tweet* const>(in.window), GraphKind::kUserHashtag));
    StaticOracle oracle(syn.oracles[0]);
    for (int b : {1, 3, 7}) {
      auto s = SelectionSession::init(in, {topic_hashtag(0, 0)}, Method{});
      REQUIRE(s.candidate_count() >= 10);
      const auto out = s.run_round(oracle, b, 1, 0);
      CHECK(out.queries == b);
      CHECK(out.positives + out.negatives == b);
      CHECK(int(s.labels().history().size()) == b);
      CHECK_FALSE(out.exhausted);
    }
  }

  TEST_CASE("exhaustion ends a round early") {
    Fixture f({{"u1", "a"}, {"u1", "b"}});
    auto s = SelectionSession::init(f.inputs, {"a"}, Method{});
    StaticOracle oracle({"t", {"a", "b"}});
    const auto out = s.run_round(oracle, 5, 1, 0);
    CHECK(out.queries == 1);
    CHECK(out.exhausted);
    CHECK_FALSE(s.suggest_next());
    CHECK_THROWS_AS(s.run_round(oracle, 0, 2, 0), Error);
  }

  TEST_CASE("full budget reaches the oracle closure of the seeds") {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      const auto syn = generate_synthetic({.num_users = 100, .num_days = 1, .rng_seed = seed});
      SelectionInputs in;
      in.window = syn.corpus.slice({0, 0});
      in.graph = std::make_shared<const BipartiteGraph>(
          build_graph(std::span<const Tweet* const>(in.window), GraphKind::kUserHashtag));
      const auto& oracle_set = syn.oracles[1];
      const std::set<std::string> seeds{*oracle_set.keywords.begin()};

      // BFS over hashtag co-occurrence, expanding only through oracle tags and
      // only through users the seeds touch (neighbors come from E_s^b)
      std::set<std::string> seed_users;
      for (const Tweet* t : in.window) {
        for (const auto& h : t->hashtags) {
          if (seeds.count(h)) seed_users.insert(t->user_id);
        }
      }
      std::map<std::string, std::set<std::string>> tags_of_user;
      std::map<std::string, std::set<std::string>> users_of_tag;
      for (const Tweet* t : in.window) {
        if (!seed_users.count(t->user_id)) continue;
        for (const auto& h : t->hashtags) {
          tags_of_user[t->user_id].insert(h);
          users_of_tag[h].insert(t->user_id);
        }
      }
      std::set<std::string> reached(seeds);
      std::queue<std::string> frontier;
      for (const auto& s : seeds) frontier.push(s);
      while (!frontier.empty()) {
        const auto h = frontier.front();
        frontier.pop();
        for (const auto& u : users_of_tag[h]) {
          for (const auto& v : tags_of_user[u]) {
            if (oracle_set.contains(v) && reached.insert(v).second) frontier.push(v);
          }
        }
      }

      StaticOracle oracle(oracle_set);
      auto s = SelectionSession::init(in, seeds, Method{});
      s.run_round(oracle, int(in.graph->hashtag_count()), 1, 0);
      const auto& pos = s.labels().positives();
      CHECK(reached.size() > seeds.size());
      CHECK(std::includes(pos.begin(), pos.end(), reached.begin(), reached.end()));
    }
  }

  TEST_CASE("suggestions peek without consuming") {
    Fixture f({{"u1", "a"}, {"u1", "x"}, {"u2", "a"}, {"u2", "x"}, {"u3", "a"}, {"u3", "y"}});
    auto s = SelectionSession::init(f.inputs, {"a"}, Method{});
    const auto first = s.suggest_next();
    REQUIRE(first);
    CHECK(first->hashtag == "x");
    CHECK(first->positive_cooccurrence == 2);
    CHECK(first->frequency == 2);
    CHECK(first->sample_tweets == std::vector<std::string>{"#x", "#x"});
    CHECK(s.suggest_next()->hashtag == "x");
    s.apply_label("x", false, 1, 0);
    CHECK(s.suggest_next()->hashtag == "y");
    CHECK_THROWS_AS(s.apply_label("x", true, 1, 0), Error);
    CHECK_THROWS_AS(s.apply_label("nothere", true, 1, 0), Error);
  }

  TEST_CASE("two runs give identical histories") {
    const auto syn = generate_synthetic({.num_users = 100, .num_days = 1, .rng_seed = 44});
    SelectionInputs in;
    in.window = syn.corpus.slice({0, 0});
    in.graph = std::make_shared<const BipartiteGraph>(
        build_graph(std::span<const Tweet* const>(in.window), GraphKind::kUserHashtag));
    for (const auto kind : {MethodKind::kKeySelect, MethodKind::kRandomWalk}) {
      auto run = [&] {
        StaticOracle oracle(syn.oracles[0]);
        auto s = SelectionSession::init(in, {topic_hashtag(0, 0)}, Method{.kind = kind, .rng_seed = 8});
        s.run_round(oracle, 12, 1, 0);
        return s.labels().history();
      };
      CHECK(run() == run());
    }
  }

  TEST_CASE("all-negative rounds never grow the pool") {
    const auto syn = generate_synthetic({.num_users = 100, .num_days = 1, .rng_seed = 45});
    SelectionInputs in;
    in.window = syn.corpus.slice({0, 0});
    in.graph = std::make_shared<const BipartiteGraph>(
        build_graph(std::span<const Tweet* const>(in.window), GraphKind::kUserHashtag));
    auto s = SelectionSession::init(in, {topic_hashtag(0, 0)}, Method{});
    StaticOracle nothing({"empty", {topic_hashtag(0, 0)}});
    auto size = s.candidate_count();
    for (int round = 1; round <= 5; ++round) {
      s.run_round(nothing, 2, round, 0);
      CHECK(s.candidate_count() <= size);
      size = s.candidate_count();
    }
  }

  TEST_CASE("initialization scores each candidate once") {
    const auto syn = generate_synthetic({.num_users = 150, .num_days = 1, .rng_seed = 46});
    SelectionInputs in;
    in.window = syn.corpus.slice({0, 0});
    in.graph = std::make_shared<const BipartiteGraph>(
        build_graph(std::span<const Tweet* const>(in.window), GraphKind::kUserHashtag));
    const auto s = SelectionSession::init(in, {topic_hashtag(0, 0), topic_hashtag(1, 0)}, Method{});
    CHECK(s.stats().initial_evaluations == s.candidate_count());
    CHECK(s.stats().initial_evaluations <=
          in.graph->hashtag_count() * s.labels().positives().size());
  }

  TEST_CASE("tweet-hashtag neighborhoods") {
    Fixture f({{"u1", "a"}, {"u1", "b"}});
    // separate tweets: a and b never share a tweet
    f.inputs.graph = std::make_shared<const BipartiteGraph>(
        build_graph(std::span<const Tweet* const>(f.inputs.window), GraphKind::kTweetHashtag));
    const auto s = SelectionSession::init(f.inputs, {"a"}, Method{});
    CHECK(s.candidate_count() == 0);
  }
}

TEST_SUITE("oracle") {
  TEST_CASE("interactive oracle hands questions across threads") {
    InteractiveOracle oracle;
    std::thread labeler([&] {
      for (int i = 0; i < 2; ++i) {
        const auto q = oracle.wait_for_question();
        REQUIRE(q);
        oracle.answer(*q == "yes");
      }
    });
    CHECK(oracle.is_relevant("yes"));
    CHECK_FALSE(oracle.is_relevant("no"));
    labeler.join();
    CHECK_FALSE(oracle.pending());
    CHECK_THROWS_AS(oracle.answer(true), Error);
    oracle.close();
    CHECK_FALSE(oracle.wait_for_question());
    CHECK_THROWS_AS(oracle.is_relevant("late"), Error);
  }

  TEST_CASE("interactive oracle drives a round") {
    Fixture f({{"u1", "a"}, {"u1", "b"}, {"u1", "c"}});
    auto s = SelectionSession::init(f.inputs, {"a"}, Method{});
    InteractiveOracle oracle;
    std::thread labeler([&] {
      while (auto q = oracle.wait_for_question()) oracle.answer(*q == "b");
    });
    const auto out = s.run_round(oracle, 2, 1, 0);
    oracle.close();
    labeler.join();
    CHECK(out.positives == 1);
    CHECK(out.negatives == 1);
  }
}

TEST_CASE("method names") {
  for (const auto k : {MethodKind::kKeySelect, MethodKind::kRandomWalk,
                       MethodKind::kDegreeCentrality, MethodKind::kTfidf, MethodKind::kWord2Vec}) {
    CHECK(parse_method(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_method("pagerank"), Error);
}
