#include <benchmark/benchmark.h>

#include "keysel/graph.hpp"
#include "keysel/oracle.hpp"
#include "keysel/session.hpp"
#include "keysel/synthetic.hpp"

namespace {

struct Setup {
  keysel::SyntheticCorpus syn;
  keysel::SelectionInputs inputs;
  std::set<std::string> seeds;
};

Setup make_setup(int vocabulary_scale) {
  keysel::SyntheticSpec spec;
  spec.num_topics = 4;
  spec.hashtags_per_topic = 25 * vocabulary_scale;
  spec.background_hashtags = 100 * vocabulary_scale;
  spec.num_users = 2000;
  spec.num_days = 2;
  spec.homophily = 0.5;
  spec.hashtags_per_tweet = 3;
  Setup s{keysel::generate_synthetic(spec), {}, {}};
  s.inputs.window = s.syn.corpus.slice({0, 1});
  s.inputs.graph = std::make_shared<const keysel::BipartiteGraph>(build_graph(
      std::span<const keysel::Tweet* const>(s.inputs.window), keysel::GraphKind::kUserHashtag));
  s.seeds = {keysel::topic_hashtag(0, 0), keysel::topic_hashtag(0, 1), keysel::topic_hashtag(0, 2)};
  return s;
}

void BM_InitialScoringPass(benchmark::State& state) {
  const auto s = make_setup(static_cast<int>(state.range(0)));
  std::size_t candidates = 0;
  for (auto _ : state) {
    auto session = keysel::SelectionSession::init(s.inputs, s.seeds, keysel::Method{});
    candidates = session.candidate_count();
    benchmark::DoNotOptimize(candidates);
  }
  state.counters["vocabulary"] = static_cast<double>(s.inputs.graph->hashtag_count());
  state.counters["candidates"] = static_cast<double>(candidates);
}
BENCHMARK(BM_InitialScoringPass)->Arg(1)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_Round(benchmark::State& state) {
  const auto s = make_setup(2);
  const auto kind = static_cast<keysel::MethodKind>(state.range(0));
  keysel::StaticOracle oracle(s.syn.oracles[0]);
  for (auto _ : state) {
    auto session = keysel::SelectionSession::init(s.inputs, s.seeds, keysel::Method{.kind = kind});
    benchmark::DoNotOptimize(session.run_round(oracle, 30, 1, 0));
  }
  state.SetLabel(keysel::to_string(kind));
}
BENCHMARK(BM_Round)
    ->Arg(static_cast<int>(keysel::MethodKind::kKeySelect))
    ->Arg(static_cast<int>(keysel::MethodKind::kRandomWalk))
    ->Arg(static_cast<int>(keysel::MethodKind::kDegreeCentrality))
    ->Arg(static_cast<int>(keysel::MethodKind::kTfidf))
    ->Unit(benchmark::kMillisecond);

}  // namespace
