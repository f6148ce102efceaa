#include <benchmark/benchmark.h>

#include "keysel/graph.hpp"
#include "keysel/synthetic.hpp"

namespace {

keysel::SyntheticCorpus corpus_of(int users) {
  keysel::SyntheticSpec spec;
  spec.num_users = users;
  spec.num_days = 5;
  return keysel::generate_synthetic(spec);
}

void BM_BuildUserGraph(benchmark::State& state) {
  const auto syn = corpus_of(static_cast<int>(state.range(0)));
  const keysel::DayRange days{0, 4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(build_graph(syn.corpus, days, keysel::GraphKind::kUserHashtag));
  }
  state.SetItemsProcessed(state.iterations() * syn.corpus.size());
}
BENCHMARK(BM_BuildUserGraph)->RangeMultiplier(4)->Range(256, 16384);

void BM_ExpandSeed(benchmark::State& state) {
  const auto syn = corpus_of(static_cast<int>(state.range(0)));
  const auto graph = std::make_shared<const keysel::BipartiteGraph>(
      build_graph(syn.corpus, {0, 4}, keysel::GraphKind::kUserHashtag));
  const std::set<std::string> seeds{keysel::topic_hashtag(0, 0), keysel::topic_hashtag(0, 1)};
  for (auto _ : state) benchmark::DoNotOptimize(expand_seed(graph, seeds));
}
BENCHMARK(BM_ExpandSeed)->RangeMultiplier(4)->Range(256, 16384);

}  // namespace
