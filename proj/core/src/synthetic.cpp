#include "keysel/synthetic.hpp"

#include <random>

#include "keysel/error.hpp"

namespace keysel {

void SyntheticSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorCode::kInvalidArgument, what); };
  if (num_topics < 1) fail("num_topics must be >= 1");
  if (hashtags_per_topic < 1) fail("hashtags_per_topic must be >= 1");
  if (background_hashtags < 0) fail("background_hashtags must be >= 0");
  if (num_users < 1) fail("num_users must be >= 1");
  if (!(tweets_per_user_per_day > 0.0)) fail("tweets_per_user_per_day must be > 0");
  if (num_days < 1) fail("num_days must be >= 1");
  if (!(homophily >= 0.0 && homophily <= 1.0)) fail("homophily must lie in [0, 1]");
  if (hashtags_per_tweet < 1) fail("hashtags_per_tweet must be >= 1");
}

std::string topic_hashtag(int topic, int index) {
  return "topic" + std::to_string(topic) + "_tag" + std::to_string(index);
}

std::string background_hashtag(int index) { return "background_tag" + std::to_string(index); }

SyntheticCorpus generate_synthetic(const SyntheticSpec& spec) {
  spec.validate();

  std::vector<std::string> vocabulary;
  std::vector<OracleSet> oracles(spec.num_topics);
  for (int k = 0; k < spec.num_topics; ++k) {
    oracles[k].topic_name = "topic" + std::to_string(k);
    for (int i = 0; i < spec.hashtags_per_topic; ++i) {
      vocabulary.push_back(topic_hashtag(k, i));
      oracles[k].keywords.insert(vocabulary.back());
    }
  }
  for (int i = 0; i < spec.background_hashtags; ++i) vocabulary.push_back(background_hashtag(i));

  std::mt19937_64 rng(spec.rng_seed);
  std::uniform_int_distribution<int> pick_topic(0, spec.num_topics - 1);
  std::uniform_int_distribution<int> pick_in_topic(0, spec.hashtags_per_topic - 1);
  std::uniform_int_distribution<std::size_t> pick_any(0, vocabulary.size() - 1);
  std::bernoulli_distribution from_home(spec.homophily);
  std::poisson_distribution<int> tweet_count(spec.tweets_per_user_per_day);

  SyntheticCorpus out;
  std::vector<int> home(spec.num_users);
  for (int u = 0; u < spec.num_users; ++u) {
    home[u] = pick_topic(rng);
    out.home_topic["user" + std::to_string(u)] = home[u];
  }

  std::vector<Tweet> tweets;
  std::size_t next_id = 0;
  for (int day = 0; day < spec.num_days; ++day) {
    for (int u = 0; u < spec.num_users; ++u) {
      const int n = tweet_count(rng);
      for (int j = 0; j < n; ++j) {
        std::string text = "post";
        for (int h = 0; h < spec.hashtags_per_tweet; ++h) {
          const std::string& tag = from_home(rng)
                                       ? vocabulary[home[u] * spec.hashtags_per_topic +
                                                    pick_in_topic(rng)]
                                       : vocabulary[pick_any(rng)];
          text += " #";
          text += tag;
        }
        tweets.push_back(make_tweet("tweet" + std::to_string(next_id++),
                                    "user" + std::to_string(u), day, std::move(text)));
      }
    }
  }
  out.corpus = Corpus(std::move(tweets));
  out.oracles = std::move(oracles);
  return out;
}

}  // namespace keysel
