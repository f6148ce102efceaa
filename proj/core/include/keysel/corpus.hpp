#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace keysel {

/// Extracts normalized hashtags from tweet text.
///
/// A hashtag starts at a '#' that begins the text or follows whitespace or
/// another '#', and runs until whitespace or the next '#'. Each tag is
/// lowercased (ASCII), has em-dashes folded to en-dashes and loses trailing
/// punctuation. Tags are returned in order of appearance, duplicates kept.
std::vector<std::string> extract_hashtags(std::string_view text);

/// Normalizes a single tag the way extract_hashtags does. A leading '#' is
/// dropped. Returns an empty string when nothing survives.
std::string normalize_hashtag(std::string_view tag);

struct Tweet {
  std::string tweet_id;
  std::string user_id;
  int day = 0;
  std::string text;
  std::vector<std::string> hashtags;  // always extract_hashtags(text)
  bool is_retweet = false;

  bool operator==(const Tweet&) const = default;
};

/// Builds a tweet with hashtags extracted from the text.
Tweet make_tweet(std::string tweet_id, std::string user_id, int day, std::string text,
                 bool is_retweet = false);

/// Inclusive day interval.
struct DayRange {
  int first = 0;
  int last = 0;

  bool contains(int day) const { return day >= first && day <= last; }
  bool empty() const { return last < first; }
  bool operator==(const DayRange&) const = default;
};

/// Immutable tweet collection with unique tweet ids.
class Corpus {
 public:
  Corpus() = default;
  /// Throws Error(kData) on duplicate tweet ids or negative days.
  explicit Corpus(std::vector<Tweet> tweets);

  const std::vector<Tweet>& tweets() const { return tweets_; }
  const std::vector<int>& days() const { return days_; }
  std::size_t size() const { return tweets_.size(); }
  bool empty() const { return tweets_.empty(); }

  std::size_t user_count() const;
  std::size_t hashtag_vocabulary_size() const;

  /// Tweets whose day lies in the range, in corpus order.
  std::vector<const Tweet*> slice(DayRange range) const;

  bool operator==(const Corpus&) const = default;

 private:
  std::vector<Tweet> tweets_;
  std::vector<int> days_;
};

struct LineError {
  std::size_t line = 0;
  std::string message;
};

struct LoadOptions {
  bool strict = false;  // abort on the first malformed line
};

struct LoadResult {
  Corpus corpus;
  std::size_t duplicates = 0;
  std::size_t skipped = 0;
  std::vector<LineError> errors;
};

/// Parses an ISO-8601 timestamp and returns the UTC day number since the
/// Unix epoch. Accepts a date, or a date-time with optional fraction and a
/// 'Z' or +HH:MM / -HH:MM offset.
std::int64_t parse_utc_day(std::string_view timestamp);

LoadResult load_jsonl(std::istream& in, const LoadOptions& options = {});
LoadResult load_jsonl(const std::filesystem::path& path, const LoadOptions& options = {});

/// Writes one JSON object per tweet, always using the "day" field.
void write_jsonl(const Corpus& corpus, std::ostream& out);
void write_jsonl(const Corpus& corpus, const std::filesystem::path& path);

}  // namespace keysel
