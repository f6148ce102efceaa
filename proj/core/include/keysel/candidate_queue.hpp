#pragma once

#include <cstddef>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <vector>

namespace keysel {

struct QueueEntry {
  double score = 0.0;
  std::string hashtag;

  bool operator==(const QueueEntry&) const = default;
};

/// Max-priority queue of candidates with lazy deletion.
///
/// Higher scores pop first; equal scores pop in ascending hashtag order. A
/// hashtag may be offered several times; only its best score is live and
/// superseded or discarded entries are skipped on pop.
class CandidateQueue {
 public:
  /// Enqueues the hashtag unless it is already live with a score >= `score`.
  /// Returns whether an entry was pushed.
  bool offer(const std::string& hashtag, double score);

  /// Removes the hashtag from the live set (it was labeled).
  void discard(const std::string& hashtag);

  std::optional<QueueEntry> pop();
  std::optional<QueueEntry> peek() const;

  bool contains(const std::string& hashtag) const { return live_.count(hashtag) > 0; }
  std::optional<double> score_of(const std::string& hashtag) const;
  /// Number of live hashtags.
  std::size_t size() const { return live_.size(); }
  bool empty() const { return live_.empty(); }

  /// Live entries in pop order.
  std::vector<QueueEntry> snapshot() const;

 private:
  struct Lower {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
      return a.score != b.score ? a.score < b.score : a.hashtag > b.hashtag;
    }
  };

  void drop_stale() const;

  mutable std::priority_queue<QueueEntry, std::vector<QueueEntry>, Lower> heap_;
  std::unordered_map<std::string, double> live_;
};

}  // namespace keysel
