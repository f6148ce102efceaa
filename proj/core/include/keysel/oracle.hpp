#pragma once

#include <condition_variable>
#include <mutex>
#include <optional>
#include <string>

#include "keysel/oracle_set.hpp"

namespace keysel {

/// Answers topic-relevance queries for hashtags.
class Oracle {
 public:
  virtual ~Oracle() = default;
  virtual bool is_relevant(const std::string& hashtag) = 0;
};

/// Membership in a fixed ground-truth keyword set.
class StaticOracle final : public Oracle {
 public:
  explicit StaticOracle(OracleSet oracle) : oracle_(std::move(oracle)) {}
  bool is_relevant(const std::string& hashtag) override { return oracle_.contains(hashtag); }
  const OracleSet& oracle() const { return oracle_; }

 private:
  OracleSet oracle_;
};

/// Request/response channel to a human labeler. is_relevant() publishes the
/// question and blocks until answer() or close() is called from another
/// thread.
class InteractiveOracle final : public Oracle {
 public:
  bool is_relevant(const std::string& hashtag) override;

  /// The question currently awaiting an answer.
  std::optional<std::string> pending() const;
  /// Blocks until a question is pending or the channel closes; returns the
  /// question, or nullopt when closed.
  std::optional<std::string> wait_for_question();
  /// Throws Error(kConflict) if no question is pending.
  void answer(bool relevant);
  /// Unblocks waiters; later queries throw Error(kConflict).
  void close();

 private:
  mutable std::mutex mutex_;
  std::condition_variable cv_;
  std::optional<std::string> question_;
  std::optional<bool> reply_;
  bool closed_ = false;
};

}  // namespace keysel
