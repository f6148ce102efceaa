#include "keysel/candidate_queue.hpp"

#include <algorithm>

namespace keysel {

bool CandidateQueue::offer(const std::string& hashtag, double score) {
  auto it = live_.find(hashtag);
  if (it != live_.end() && it->second >= score) return false;
  live_[hashtag] = score;
  heap_.push({score, hashtag});
  return true;
}

void CandidateQueue::discard(const std::string& hashtag) { live_.erase(hashtag); }

void CandidateQueue::drop_stale() const {
  while (!heap_.empty()) {
    const auto& top = heap_.top();
    auto it = live_.find(top.hashtag);
    if (it != live_.end() && it->second == top.score) return;
    heap_.pop();
  }
}

std::optional<QueueEntry> CandidateQueue::pop() {
  drop_stale();
  if (heap_.empty()) return std::nullopt;
  QueueEntry top = heap_.top();
  heap_.pop();
  live_.erase(top.hashtag);
  return top;
}

std::optional<QueueEntry> CandidateQueue::peek() const {
  drop_stale();
  if (heap_.empty()) return std::nullopt;
  return heap_.top();
}

std::optional<double> CandidateQueue::score_of(const std::string& hashtag) const {
  auto it = live_.find(hashtag);
  if (it == live_.end()) return std::nullopt;
  return it->second;
}

std::vector<QueueEntry> CandidateQueue::snapshot() const {
  std::vector<QueueEntry> out;
  out.reserve(live_.size());
  for (const auto& [h, s] : live_) out.push_back({s, h});
  std::sort(out.begin(), out.end(), [](const QueueEntry& a, const QueueEntry& b) {
    return a.score != b.score ? a.score > b.score : a.hashtag < b.hashtag;
  });
  return out;
}

}  // namespace keysel
