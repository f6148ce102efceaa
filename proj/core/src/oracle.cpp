#include "keysel/oracle.hpp"

#include "keysel/error.hpp"

namespace keysel {

bool InteractiveOracle::is_relevant(const std::string& hashtag) {
  std::unique_lock lock(mutex_);
  if (closed_) throw Error(ErrorCode::kConflict, "oracle channel closed");
  question_ = hashtag;
  reply_.reset();
  cv_.notify_all();
  cv_.wait(lock, [&] { return reply_.has_value() || closed_; });
  if (!reply_) throw Error(ErrorCode::kConflict, "oracle channel closed");
  const bool answer = *reply_;
  reply_.reset();
  return answer;
}

std::optional<std::string> InteractiveOracle::pending() const {
  std::lock_guard lock(mutex_);
  return question_;
}

std::optional<std::string> InteractiveOracle::wait_for_question() {
  std::unique_lock lock(mutex_);
  cv_.wait(lock, [&] { return question_.has_value() || closed_; });
  return closed_ ? std::nullopt : question_;
}

void InteractiveOracle::answer(bool relevant) {
  std::lock_guard lock(mutex_);
  if (!question_) throw Error(ErrorCode::kConflict, "no pending oracle question");
  question_.reset();
  reply_ = relevant;
  cv_.notify_all();
}

void InteractiveOracle::close() {
  std::lock_guard lock(mutex_);
  closed_ = true;
  question_.reset();
  cv_.notify_all();
}

}  // namespace keysel
