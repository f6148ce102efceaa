#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace keysel {

struct HistoryEntry {
  int round = 0;
  int day = 0;
  std::string hashtag;
  bool positive = false;
  double score = 0.0;  // score the hashtag had when it was suggested

  bool operator==(const HistoryEntry&) const = default;
};

/// Seeds, positive and negative labels, and the labeling history.
///
/// Invariants: seeds are a subset of positives, positives and negatives are
/// disjoint, and every non-seed label appears exactly once in the history.
class LabelState {
 public:
  LabelState() = default;
  explicit LabelState(std::set<std::string> seeds);

  const std::set<std::string>& seeds() const { return seeds_; }
  const std::set<std::string>& positives() const { return positives_; }
  const std::set<std::string>& negatives() const { return negatives_; }
  const std::vector<HistoryEntry>& history() const { return history_; }

  bool is_labeled(const std::string& hashtag) const;
  /// true = positive, false = negative, nullopt = unlabeled.
  std::optional<bool> label_of(const std::string& hashtag) const;

  /// Throws Error(kConflict) if the hashtag already carries a label.
  void record(HistoryEntry entry);

  /// {seeds, positives, negatives, history[{round, day, hashtag, label, score}]}
  std::string to_json() const;
  /// Validates the invariants; throws Error(kData) on violation.
  static LabelState from_json(std::string_view json);

  bool operator==(const LabelState&) const = default;

 private:
  std::set<std::string> seeds_;
  std::set<std::string> positives_;
  std::set<std::string> negatives_;
  std::vector<HistoryEntry> history_;
};

}  // namespace keysel
