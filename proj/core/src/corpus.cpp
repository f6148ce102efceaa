#include "keysel/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <chrono>
#include <fstream>
#include <optional>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "keysel/error.hpp"

namespace keysel {

namespace {

constexpr std::string_view kEmDash = "\xE2\x80\x94";
constexpr std::string_view kEnDash = "\xE2\x80\x93";
constexpr std::string_view kEllipsis = "\xE2\x80\xA6";

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
}

bool is_word_byte(char c) {
  const auto u = static_cast<unsigned char>(c);
  return (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z') ||
         c == '_' || c == '&';
}

bool is_trailing_punct(char c) {
  const auto u = static_cast<unsigned char>(c);
  return u < 0x80 && c != '_' && std::ispunct(u);
}

}  // namespace

std::string normalize_hashtag(std::string_view tag) {
  while (!tag.empty() && tag.front() == '#') tag.remove_prefix(1);

  std::string out;
  out.reserve(tag.size());
  for (std::size_t i = 0; i < tag.size();) {
    if (tag.substr(i, kEmDash.size()) == kEmDash) {
      out.append(kEnDash);
      i += kEmDash.size();
      continue;
    }
    const char c = tag[i++];
    out.push_back((c >= 'A' && c <= 'Z') ? static_cast<char>(c - 'A' + 'a') : c);
  }

  for (;;) {
    if (!out.empty() && is_trailing_punct(out.back())) {
      out.pop_back();
    } else if (out.size() >= kEllipsis.size() &&
               std::string_view(out).substr(out.size() - kEllipsis.size()) == kEllipsis) {
      out.resize(out.size() - kEllipsis.size());
    } else {
      break;
    }
  }
  return out;
}

std::vector<std::string> extract_hashtags(std::string_view text) {
  std::vector<std::string> tags;
  std::size_t i = 0;
  std::size_t tag_end = std::string_view::npos;
  while (i < text.size()) {
    const bool glued = i > 0 && i != tag_end && text[i - 1] != '#' && is_word_byte(text[i - 1]);
    if (text[i] != '#' || glued) {
      ++i;
      continue;
    }
    std::size_t end = i + 1;
    while (end < text.size() && !is_space(text[end]) && text[end] != '#') ++end;
    std::string tag = normalize_hashtag(text.substr(i + 1, end - i - 1));
    if (!tag.empty()) tags.push_back(std::move(tag));
    i = tag_end = end;
  }
  return tags;
}

Tweet make_tweet(std::string tweet_id, std::string user_id, int day, std::string text,
                 bool is_retweet) {
  Tweet t;
  t.tweet_id = std::move(tweet_id);
  t.user_id = std::move(user_id);
  t.day = day;
  t.hashtags = extract_hashtags(text);
  t.text = std::move(text);
  t.is_retweet = is_retweet;
  return t;
}

Corpus::Corpus(std::vector<Tweet> tweets) : tweets_(std::move(tweets)) {
  std::unordered_set<std::string_view> ids;
  std::set<int> days;
  for (const Tweet& t : tweets_) {
    if (!ids.insert(t.tweet_id).second) {
      throw Error(ErrorCode::kData, "duplicate tweet_id '" + t.tweet_id + "'");
    }
    if (t.day < 0) {
      throw Error(ErrorCode::kData, "negative day for tweet '" + t.tweet_id + "'");
    }
    days.insert(t.day);
  }
  days_.assign(days.begin(), days.end());
}

std::size_t Corpus::user_count() const {
  std::unordered_set<std::string_view> users;
  for (const Tweet& t : tweets_) users.insert(t.user_id);
  return users.size();
}

std::size_t Corpus::hashtag_vocabulary_size() const {
  std::unordered_set<std::string_view> vocab;
  for (const Tweet& t : tweets_) {
    for (const auto& h : t.hashtags) vocab.insert(h);
  }
  return vocab.size();
}

std::vector<const Tweet*> Corpus::slice(DayRange range) const {
  std::vector<const Tweet*> out;
  for (const Tweet& t : tweets_) {
    if (range.contains(t.day)) out.push_back(&t);
  }
  return out;
}

namespace {

int parse_fixed(std::string_view s, std::size_t pos, std::size_t len) {
  if (pos + len > s.size()) throw Error(ErrorCode::kData, "truncated timestamp");
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, value);
  if (ec != std::errc() || ptr != s.data() + pos + len) {
    throw Error(ErrorCode::kData, "bad timestamp digits in '" + std::string(s) + "'");
  }
  return value;
}

void expect_char(std::string_view s, std::size_t pos, char c) {
  if (pos >= s.size() || s[pos] != c) {
    throw Error(ErrorCode::kData, "malformed timestamp '" + std::string(s) + "'");
  }
}

}  // namespace

std::int64_t parse_utc_day(std::string_view s) {
  using namespace std::chrono;
  const int y = parse_fixed(s, 0, 4);
  expect_char(s, 4, '-');
  const int mo = parse_fixed(s, 5, 2);
  expect_char(s, 7, '-');
  const int d = parse_fixed(s, 8, 2);
  const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)},
                           day{static_cast<unsigned>(d)}};
  if (!ymd.ok()) throw Error(ErrorCode::kData, "invalid date in '" + std::string(s) + "'");

  std::int64_t seconds = 0;
  std::size_t pos = 10;
  if (pos < s.size()) {
    if (s[pos] != 'T' && s[pos] != ' ') {
      throw Error(ErrorCode::kData, "malformed timestamp '" + std::string(s) + "'");
    }
    const int hh = parse_fixed(s, pos + 1, 2);
    expect_char(s, pos + 3, ':');
    const int mm = parse_fixed(s, pos + 4, 2);
    int ss = 0;
    pos += 6;
    if (pos < s.size() && s[pos] == ':') {
      ss = parse_fixed(s, pos + 1, 2);
      pos += 3;
    }
    if (pos < s.size() && s[pos] == '.') {
      ++pos;
      while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
    }
    if (hh > 23 || mm > 59 || ss > 60) {
      throw Error(ErrorCode::kData, "invalid time in '" + std::string(s) + "'");
    }
    seconds = hh * 3600 + mm * 60 + ss;
    if (pos < s.size()) {
      if (s[pos] == 'Z') {
        ++pos;
      } else if (s[pos] == '+' || s[pos] == '-') {
        const int sign = s[pos] == '+' ? 1 : -1;
        const int oh = parse_fixed(s, pos + 1, 2);
        pos += 3;
        int om = 0;
        if (pos < s.size() && s[pos] == ':') ++pos;
        if (pos < s.size()) {
          om = parse_fixed(s, pos, 2);
          pos += 2;
        }
        seconds -= sign * (oh * 3600 + om * 60);
      }
    }
    if (pos != s.size()) {
      throw Error(ErrorCode::kData, "trailing characters in timestamp '" + std::string(s) + "'");
    }
  }
  const std::int64_t base = sys_days{ymd}.time_since_epoch().count();
  // floor division so negative offsets roll back to the previous day
  std::int64_t shift = seconds / 86400;
  if (seconds % 86400 < 0) --shift;
  return base + shift;
}

namespace {

struct RawRecord {
  std::size_t line = 0;
  std::string tweet_id;
  std::string user_id;
  std::optional<int> day;
  std::optional<std::int64_t> utc_day;
  std::string text;
  bool is_retweet = false;
};

std::string required_string(const nlohmann::json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorCode::kData, std::string("missing field '") + key + "'");
  if (it->is_string()) return it->get<std::string>();
  // numeric ids are common in exported tweet dumps
  if (it->is_number_integer()) return std::to_string(it->get<long long>());
  throw Error(ErrorCode::kData, std::string("field '") + key + "' must be a string");
}

RawRecord parse_record(const std::string& line, std::size_t line_no) {
  nlohmann::json obj;
  try {
    obj = nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kData, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) throw Error(ErrorCode::kData, "line is not a JSON object");

  RawRecord r;
  r.line = line_no;
  r.tweet_id = required_string(obj, "tweet_id");
  r.user_id = required_string(obj, "user_id");
  r.text = required_string(obj, "text");
  if (auto it = obj.find("day"); it != obj.end()) {
    if (!it->is_number_integer() || it->get<long long>() < 0) {
      throw Error(ErrorCode::kData, "field 'day' must be a non-negative integer");
    }
    r.day = static_cast<int>(it->get<long long>());
  } else if (auto ts = obj.find("created_at"); ts != obj.end()) {
    if (!ts->is_string()) throw Error(ErrorCode::kData, "field 'created_at' must be a string");
    r.utc_day = parse_utc_day(ts->get<std::string>());
  } else {
    throw Error(ErrorCode::kData, "missing field 'day' or 'created_at'");
  }
  if (auto it = obj.find("is_retweet"); it != obj.end()) {
    if (!it->is_boolean()) throw Error(ErrorCode::kData, "field 'is_retweet' must be a boolean");
    r.is_retweet = it->get<bool>();
  }
  return r;
}

}  // namespace

LoadResult load_jsonl(std::istream& in, const LoadOptions& options) {
  LoadResult result;
  std::vector<RawRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      records.push_back(parse_record(line, line_no));
    } catch (const Error& e) {
      if (options.strict) {
        throw Error(ErrorCode::kData, "line " + std::to_string(line_no) + ": " + e.what());
      }
      ++result.skipped;
      result.errors.push_back({line_no, e.what()});
    }
  }

  std::optional<std::int64_t> earliest;
  for (const RawRecord& r : records) {
    if (r.utc_day && (!earliest || *r.utc_day < *earliest)) earliest = r.utc_day;
  }

  std::vector<Tweet> tweets;
  tweets.reserve(records.size());
  std::unordered_set<std::string> seen;
  for (RawRecord& r : records) {
    if (!seen.insert(r.tweet_id).second) {
      ++result.duplicates;
      continue;
    }
    const int day = r.day ? *r.day : static_cast<int>(*r.utc_day - *earliest);
    tweets.push_back(make_tweet(std::move(r.tweet_id), std::move(r.user_id), day,
                                std::move(r.text), r.is_retweet));
  }
  result.corpus = Corpus(std::move(tweets));
  return result;
}

LoadResult load_jsonl(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open corpus file " + path.string());
  try {
    return load_jsonl(in, options);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_jsonl(const Corpus& corpus, std::ostream& out) {
  for (const Tweet& t : corpus.tweets()) {
    nlohmann::ordered_json obj;
    obj["tweet_id"] = t.tweet_id;
    obj["user_id"] = t.user_id;
    obj["day"] = t.day;
    obj["text"] = t.text;
    obj["is_retweet"] = t.is_retweet;
    out << obj.dump() << '\n';
  }
}

void write_jsonl(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::kIo, "cannot write corpus file " + path.string());
  write_jsonl(corpus, out);
}

}  // namespace keysel
