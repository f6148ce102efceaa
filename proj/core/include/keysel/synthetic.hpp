#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "keysel/corpus.hpp"
#include "keysel/oracle_set.hpp"

namespace keysel {

/// Parameters of a planted-topic corpus.
struct SyntheticSpec {
  int num_topics = 2;
  int hashtags_per_topic = 15;
  int background_hashtags = 20;
  int num_users = 200;
  double tweets_per_user_per_day = 1.0;  // Poisson mean
  int num_days = 10;
  double homophily = 0.9;
  int hashtags_per_tweet = 2;
  std::uint64_t rng_seed = 0;

  /// Throws Error(kInvalidArgument) naming the first violated bound.
  void validate() const;
};

struct SyntheticCorpus {
  Corpus corpus;
  std::vector<OracleSet> oracles;                // one per planted topic
  std::map<std::string, int> home_topic;         // user_id -> topic index
};

/// Hashtag names used by the generator.
std::string topic_hashtag(int topic, int index);
std::string background_hashtag(int index);

/// Deterministic for a given spec (including rng_seed) on one standard
/// library implementation.
SyntheticCorpus generate_synthetic(const SyntheticSpec& spec);

}  // namespace keysel
