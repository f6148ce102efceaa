#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "keysel/text.hpp"

namespace keysel::testing {

/// Documents where x and y always sit next to each other among words of one
/// filler group, and z appears only among a disjoint filler group.
inline std::vector<TokenizedDoc> planted_cooccurrence_corpus(std::uint64_t seed, int docs = 300) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> filler(0, 9);
  std::vector<TokenizedDoc> out;
  for (int d = 0; d < docs; ++d) {
    TokenizedDoc doc;
    doc.tweet_id = std::to_string(d);
    const bool xy = d % 2 == 0;
    const std::string group = xy ? "a" : "b";
    for (int i = 0; i < 8; ++i) doc.tokens.push_back(group + std::to_string(filler(rng)));
    const auto at = std::uniform_int_distribution<std::size_t>(0, doc.tokens.size())(rng);
    if (xy) {
      doc.tokens.insert(doc.tokens.begin() + at, {"x", "y"});
    } else {
      doc.tokens.insert(doc.tokens.begin() + at, "z");
    }
    out.push_back(std::move(doc));
  }
  return out;
}

}  // namespace keysel::testing
