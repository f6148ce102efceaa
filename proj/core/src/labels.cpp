#include "keysel/labels.hpp"

#include <nlohmann/json.hpp>

#include "keysel/error.hpp"

namespace keysel {

LabelState::LabelState(std::set<std::string> seeds)
    : seeds_(std::move(seeds)), positives_(seeds_) {}

bool LabelState::is_labeled(const std::string& hashtag) const {
  return positives_.count(hashtag) > 0 || negatives_.count(hashtag) > 0;
}

std::optional<bool> LabelState::label_of(const std::string& hashtag) const {
  if (positives_.count(hashtag)) return true;
  if (negatives_.count(hashtag)) return false;
  return std::nullopt;
}

void LabelState::record(HistoryEntry entry) {
  if (auto existing = label_of(entry.hashtag)) {
    throw Error(ErrorCode::kConflict, "hashtag '" + entry.hashtag + "' already labeled " +
                                          (*existing ? "positive" : "negative"));
  }
  (entry.positive ? positives_ : negatives_).insert(entry.hashtag);
  history_.push_back(std::move(entry));
}

std::string LabelState::to_json() const {
  nlohmann::ordered_json out;
  out["seeds"] = seeds_;
  out["positives"] = positives_;
  out["negatives"] = negatives_;
  auto history = nlohmann::ordered_json::array();
  for (const auto& h : history_) {
    nlohmann::ordered_json e;
    e["round"] = h.round;
    e["day"] = h.day;
    e["hashtag"] = h.hashtag;
    e["label"] = h.positive ? "positive" : "negative";
    e["score"] = h.score;
    history.push_back(std::move(e));
  }
  out["history"] = std::move(history);
  return out.dump();
}

LabelState LabelState::from_json(std::string_view json) {
  try {
    const auto in = nlohmann::json::parse(json);
    LabelState state(in.at("seeds").get<std::set<std::string>>());
    for (const auto& e : in.at("history")) {
      const auto label = e.at("label").get<std::string>();
      if (label != "positive" && label != "negative") {
        throw Error(ErrorCode::kData, "label must be 'positive' or 'negative'");
      }
      state.record({e.at("round").get<int>(), e.at("day").get<int>(),
                    e.at("hashtag").get<std::string>(), label == "positive",
                    e.at("score").get<double>()});
    }
    if (state.positives_ != in.at("positives").get<std::set<std::string>>() ||
        state.negatives_ != in.at("negatives").get<std::set<std::string>>()) {
      throw Error(ErrorCode::kData, "label sets disagree with history");
    }
    return state;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kData, std::string("invalid session JSON: ") + e.what());
  } catch (const Error& e) {
    throw Error(ErrorCode::kData, std::string("invalid session JSON: ") + e.what());
  }
}

}  // namespace keysel
